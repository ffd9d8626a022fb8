#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "medlex/lexicon.hpp"

namespace medlex {

/// Unit-cost edit distance over Unicode scalar values.
std::size_t levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t levenshtein_utf8(std::string_view a, std::string_view b);

enum class ScoreScale {
    kPercent, // raw score x 100, matching the reported magnitudes
    kRaw,
};

struct ScoringOptions {
    std::vector<LanguageCode> reference_languages{lang::eng(), lang::fre()};
    ScoreScale scale = ScoreScale::kPercent;
};

/// A German mention with its harmonized distance. `defined` is false
/// when the concept offers no reference-language synonym at all.
struct ScoredMention {
    Mention mention;
    double h_dist = 0.0;
    bool defined = false;
};

/// Harmonized distance of a German target against reference synonym
/// lists: the minimum Levenshtein distance per reference language,
/// averaged over the languages that have synonyms, divided by the
/// length of the folded target. With both English and French present
/// this is (min_lev_en + min_lev_fr) / (2 * len). Distances run over
/// folded forms.
ScoredMention harmonized_distance(const Mention& target,
                                  const std::vector<Mention>& en_refs,
                                  const std::vector<Mention>& fr_refs,
                                  ScoreScale scale = ScoreScale::kPercent);

struct SortedSynonymEntry {
    std::string cui;
    std::vector<ScoredMention> ranked; // ascending h_dist, undefined last
};

/// Scores all German mentions of the concept against its own reference-
/// language mentions and sorts ascending by h_dist; ties break on the
/// folded form, undefined scores go last. Throws ValidationError when
/// the concept has no German mention.
SortedSynonymEntry sort_synonyms(const Concept& rec,
                                 const ScoringOptions& options = {});

/// Builds the sorted synonym data set: applies the semantic-type filter
/// (when given), drops concepts without German mentions, and returns
/// entries ordered by CUI. `jobs` > 1 scores concepts in parallel; the
/// output is identical either way.
std::vector<SortedSynonymEntry> build_ssd(
    const Lexicon& lexicon,
    const std::optional<std::set<std::string>>& sty_filter,
    const ScoringOptions& options = {},
    unsigned jobs = 1);

// --- SSD file format: CUI<TAB>RANK<TAB>SURFACE<TAB>H_DIST<TAB>DEFINED --

void write_ssd(const std::vector<SortedSynonymEntry>& entries, std::ostream& out);

/// Reads an SSD file back into entries, preserving the ranked order.
/// Only the surface, score and defined flag survive the round trip.
std::vector<SortedSynonymEntry> read_ssd_entries(std::istream& in);

struct SsdRow {
    std::string surface;
    double h_dist = 0.0;
    bool defined = false;
};

/// Loaded SSD indexed by CUI for score lookups.
class SsdTable {
public:
    SsdTable() = default;
    static SsdTable from_entries(const std::vector<SortedSynonymEntry>& entries);
    static SsdTable from_stream(std::istream& in);

    const std::vector<SsdRow>* rows_for(std::string_view cui) const;
    std::size_t concept_count() const { return rows_.size(); }

    /// Lowest defined score among mentions of `cui` whose folded form
    /// equals `folded`.
    std::optional<double> score_for(std::string_view cui,
                                    std::string_view folded) const;

private:
    std::map<std::string, std::vector<SsdRow>, std::less<>> rows_;
};

// --- manual evaluation sheets -----------------------------------------

enum class SampleMode {
    kLowestOnly,      // one row per concept: its most technical mention
    kLowestVsHighest, // most technical vs least technical mention pair
};

/// Draws a deterministic random sample of concepts from the SSD and
/// renders a CSV sheet with blank judgment columns. Eligible concepts
/// need one defined score (lowest-only) or two scored mentions (pairs).
/// Throws ValidationError when n exceeds the eligible concept count.
std::string make_evaluation_sheet(const std::vector<SortedSynonymEntry>& ssd,
                                  std::size_t n, SampleMode mode,
                                  std::uint64_t seed);

/// "37.5000" style fixed formatting used by the SSD and sheet writers.
std::string format_score(double value);

} // namespace medlex
