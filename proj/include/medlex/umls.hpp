#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "medlex/lexicon.hpp"

namespace medlex {

/// Column positions in the pipe-delimited concept table. Defaults match
/// the standard UMLS MRCONSO layout (CUI, LAT, ..., STR at 14,
/// SUPPRESS at 16); synthetic fixtures override them.
struct UmlsColumns {
    std::size_t cui = 0;
    std::size_t lang = 1;
    std::size_t str = 14;
    std::optional<std::size_t> suppress = 16;
};

/// Parses "cui=0,lang=1,str=2" or "cui=0,lang=1,str=2,suppress=3".
UmlsColumns parse_columns_spec(std::string_view spec);

/// The nine semantic types used for the sorted synonym data set.
const std::set<std::string>& default_sty_filter();

struct IngestConfig {
    std::set<LanguageCode> languages{lang::ger(), lang::eng(), lang::fre()};
    std::set<std::string> semantic_types = default_sty_filter();
    std::size_t min_mentions = 1;
    UmlsColumns columns;

    IngestConfig() = default;
    /// Throws ValidationError unless GER (the scoring target) is included.
    void validate() const;
};

struct UmlsParseStats {
    std::size_t lines = 0;          // non-blank lines seen
    std::size_t mentions_added = 0;
    std::size_t duplicates = 0;
    std::size_t skipped_language = 0;
    std::size_t skipped_suppressed = 0;
    std::size_t malformed = 0;
};

struct UmlsParseResult {
    Lexicon lexicon;
    UmlsParseStats stats;
};

/// Streams a pipe-delimited concept table into a Lexicon restricted to
/// the configured languages. Malformed lines are counted and skipped;
/// more than 50% malformed raises ParseError (corrupt input).
UmlsParseResult parse_concept_table(std::istream& in, const IngestConfig& config);

struct StyAttachStats {
    std::size_t attached = 0;
    std::size_t unknown_cui = 0;
    std::size_t malformed = 0;
};

/// Attaches semantic types from CUI|STY lines. Unknown CUIs are counted
/// and skipped.
StyAttachStats attach_semantic_types(Lexicon& lexicon, std::istream& in);

/// Returns a new lexicon retaining exactly the concepts whose semantic
/// types intersect the filter set. The input is not modified.
Lexicon filter_by_semantic_types(const Lexicon& lexicon,
                                 const std::set<std::string>& sty_set);

/// Union-with-dedup merge for sharded parsing; order-independent.
Lexicon merge_lexicons(const Lexicon& a, const Lexicon& b);

} // namespace medlex
