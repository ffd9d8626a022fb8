#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "medlex/lexicon.hpp"
#include "medlex/technicality.hpp"

namespace medlex {

/// Exact and stemmed lookup maps over the German mentions of a lexicon.
/// Built once, then immutable; lookups are safe from any thread.
struct MentionIndex {
    std::map<std::string, std::set<std::string>> exact;   // folded -> CUIs
    std::map<std::string, std::set<std::string>> stemmed; // stem -> CUIs
};

MentionIndex build_index(const Lexicon& lexicon);

enum class MatchKind { kExact, kStem };

std::string to_string(MatchKind kind);

struct NormalizationResult {
    std::string query;
    /// CUIs in lexicographic order; exact matches suppress the stemmed
    /// lookup, so all matches share one kind.
    std::vector<std::pair<std::string, MatchKind>> matches;
    bool found = false;
};

/// Case-folds the query, tries the exact map, then falls back to the
/// stemmed map. A miss is reported as found=false, never an error.
NormalizationResult normalize(const MentionIndex& index, std::string_view query,
                              bool exact_only = false);

/// Easier synonyms for a query: within each matched concept, mentions
/// whose h_dist strictly exceeds the score of the matched mention,
/// easiest (largest h_dist) first. Empty when the query misses, has no
/// score, or nothing easier exists.
std::vector<std::pair<std::string, double>> simplify(const MentionIndex& index,
                                                     const SsdTable& ssd,
                                                     std::string_view query);

/// Score of the mention the query matched: the lowest defined h_dist
/// among candidate mentions across the matched concepts (folded
/// equality for exact matches, stem equality for stem matches).
std::optional<double> matched_score(const NormalizationResult& result,
                                    const SsdTable& ssd);

// --- index file format: KIND<TAB>KEY<TAB>CUI, E before S, sorted ------

void write_index(const MentionIndex& index, std::ostream& out);
MentionIndex read_index(std::istream& in);

} // namespace medlex
