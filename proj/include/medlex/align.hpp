#pragma once

#include <string>
#include <vector>

#include "medlex/lexicon.hpp"
#include "medlex/wiktionary.hpp"

namespace medlex {

struct AlignmentReport {
    std::size_t input_entries = 0;
    std::size_t aligned_entries = 0;   // headword in exactly one CUI
    std::size_t ambiguous_entries = 0; // headword in two or more CUIs
    std::size_t unmatched_entries = 0; // headword absent
    std::size_t extended_cuis = 0;     // distinct CUIs that gained mentions
    std::size_t added_mentions = 0;    // new German mentions
};

struct AlignOptions {
    /// Match synonyms against the lexicon too (the default matches the
    /// headword only).
    bool match_synonyms = false;
    /// Emit entries that never aligned as standalone WIK: concepts.
    bool emit_unaligned = false;
};

/// Merges the Wiktionary medical subset into the lexicon: an entry
/// whose case-folded headword occurs in the German mentions of exactly
/// one CUI contributes its headword and synonyms to that CUI as
/// WIKTIONARY-source mentions. Strings the concept already holds in any
/// source are skipped and do not count as added. All lookups run
/// against the input lexicon, so entry order cannot affect the result;
/// the input is not modified.
std::pair<Lexicon, AlignmentReport> align(
    const std::vector<WiktionaryEntry>& entries, const Lexicon& umls,
    const AlignOptions& options = {});

} // namespace medlex
