#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "medlex/errors.hpp"

namespace medlex {

/// Three-letter language identifier as used by the concept tables
/// (GER, ENG, FRE, SPA, SWE, RUS, ...).
class LanguageCode {
public:
    static LanguageCode from_string(std::string_view s);

    std::string str() const { return std::string(code_.data(), 3); }
    auto operator<=>(const LanguageCode&) const = default;

private:
    std::array<char, 3> code_{};
};

namespace lang {
LanguageCode ger();
LanguageCode eng();
LanguageCode fre();
} // namespace lang

enum class Source { kUmls, kWiktionary };

std::string to_string(Source s);
Source source_from_string(std::string_view s);

/// One surface form in one language from one source.
struct Mention {
    std::string surface; // NFC-normalized, whitespace-trimmed
    LanguageCode language;
    Source source = Source::kUmls;
    std::string folded; // case_fold(surface)
    std::string stem;   // German stem of folded; empty for non-German
};

/// Builds a Mention, normalizing the surface. Throws ValidationError if
/// the surface is empty after trimming or contains control characters
/// that the line-oriented snapshot format cannot carry.
Mention make_mention(std::string_view surface, LanguageCode language, Source source);

struct Concept {
    std::string cui;
    std::set<std::string> semantic_types;
    std::map<LanguageCode, std::vector<Mention>> mentions;

    const std::vector<Mention>* mentions_for(LanguageCode lang) const;
    /// true if some German mention has this folded form
    bool has_german_folded(std::string_view folded) const;
    std::size_t mention_count() const;
};

enum class Provenance { kUmls, kWumls };

/// In-memory lexicon: CUI-keyed concepts with multilingual mention
/// lists. Construction is single-writer; afterwards the container is
/// treated as immutable and is safe for concurrent readers.
class Lexicon {
public:
    Lexicon() = default;
    explicit Lexicon(Provenance p) : provenance_(p) {}

    Provenance provenance() const { return provenance_; }
    void set_provenance(Provenance p) { provenance_ = p; }

    const std::map<std::string, Concept>& concepts() const { return concepts_; }
    const Concept* find(std::string_view cui) const;
    bool contains(std::string_view cui) const { return find(cui) != nullptr; }
    std::size_t size() const { return concepts_.size(); }
    std::size_t mention_count() const;

    /// Creates the concept if absent and returns it.
    Concept& ensure_concept(std::string_view cui);

    /// Appends the mention unless the concept already holds a
    /// (language, folded, source) duplicate. Returns true when the
    /// mention was added. Throws UnknownCuiError for an absent CUI.
    bool add_mention(std::string_view cui, Mention mention);

    void add_semantic_type(std::string_view cui, std::string_view sty);

    /// Sorts every mention list by (folded, source, surface). Used when
    /// a construction path must not depend on input order.
    void sort_mentions_canonically();

private:
    std::map<std::string, Concept> concepts_;
    Provenance provenance_ = Provenance::kUmls;
};

/// Stable identifier for Wiktionary-only concepts that were never
/// aligned to a CUI: "WIK:" + 16 hex digits of an FNV-1a hash of the
/// folded headword.
std::string wiktionary_cui(std::string_view folded_headword);

// --- canonical snapshot format ---------------------------------------
//
// One mention per line: CUI<TAB>LANG<TAB>SOURCE<TAB>SURFACE, concepts
// ordered by CUI, languages by code, mentions in list order. Companion
// semantic-type file: CUI<TAB>STY ordered by (CUI, STY). Exporting an
// imported canonical file reproduces it byte for byte.

void write_snapshot(const Lexicon& lexicon, std::ostream& out);
void write_semantic_types(const Lexicon& lexicon, std::ostream& out);

/// Provenance is derived from the mention sources: any WIKTIONARY
/// mention marks the lexicon as WUMLS.
Lexicon read_snapshot(std::istream& in);
void read_semantic_types(Lexicon& lexicon, std::istream& in);

/// Writes `path` and the companion `path`.sty file.
void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path);

/// Companion .sty file is loaded when present.
Lexicon load_lexicon(const std::filesystem::path& path);

std::filesystem::path sty_path_for(const std::filesystem::path& lexicon_path);

} // namespace medlex
