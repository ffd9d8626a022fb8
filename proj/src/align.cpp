#include "medlex/align.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "medlex/unicode.hpp"

namespace medlex {

std::pair<Lexicon, AlignmentReport> align(
    const std::vector<WiktionaryEntry>& entries, const Lexicon& umls,
    const AlignOptions& options) {
    // folded German mention -> CUIs, over the unmodified input lexicon
    std::map<std::string, std::set<std::string>> occurrences;
    for (const auto& [cui, rec] : umls.concepts()) {
        if (const auto* german = rec.mentions_for(lang::ger())) {
            for (const Mention& m : *german) occurrences[m.folded].insert(cui);
        }
    }

    AlignmentReport report;
    report.input_entries = entries.size();

    // cui -> folded -> surface; built as sets so that entry order and
    // repeated contributions cannot change the outcome
    std::map<std::string, std::map<std::string, std::string>> additions;
    std::map<std::string, std::map<std::string, std::string>> standalone;

    for (const auto& entry : entries) {
        const std::string folded_head = case_fold(entry.headword);
        std::set<std::string> cuis;
        if (auto it = occurrences.find(folded_head); it != occurrences.end()) {
            cuis.insert(it->second.begin(), it->second.end());
        }
        if (options.match_synonyms) {
            for (const auto& synonym : entry.synonyms) {
                if (auto it = occurrences.find(case_fold(synonym));
                    it != occurrences.end()) {
                    cuis.insert(it->second.begin(), it->second.end());
                }
            }
        }

        if (cuis.size() == 1) {
            ++report.aligned_entries;
            const std::string& cui = *cuis.begin();
            const Concept* rec = umls.find(cui);
            auto offer = [&](const std::string& surface) {
                const std::string folded = case_fold(surface);
                if (rec->has_german_folded(folded)) return;
                auto [it, inserted] = additions[cui].try_emplace(folded, surface);
                if (!inserted && surface < it->second) it->second = surface;
            };
            offer(entry.headword);
            for (const auto& synonym : entry.synonyms) offer(synonym);
        } else if (cuis.size() >= 2) {
            ++report.ambiguous_entries;
        } else {
            ++report.unmatched_entries;
            if (options.emit_unaligned) {
                const std::string cui = wiktionary_cui(folded_head);
                auto& mentions = standalone[cui];
                auto offer = [&](const std::string& surface) {
                    const std::string folded = case_fold(surface);
                    auto [it, inserted] = mentions.try_emplace(folded, surface);
                    if (!inserted && surface < it->second) it->second = surface;
                };
                offer(entry.headword);
                for (const auto& synonym : entry.synonyms) offer(synonym);
            }
        }
    }

    Lexicon wumls = umls;
    wumls.set_provenance(Provenance::kWumls);
    for (const auto& [cui, mentions] : additions) {
        bool extended = false;
        for (const auto& [folded, surface] : mentions) {
            if (wumls.add_mention(
                    cui, make_mention(surface, lang::ger(), Source::kWiktionary))) {
                ++report.added_mentions;
                extended = true;
            }
        }
        if (extended) ++report.extended_cuis;
    }
    for (const auto& [cui, mentions] : standalone) {
        wumls.ensure_concept(cui);
        for (const auto& [folded, surface] : mentions) {
            wumls.add_mention(
                cui, make_mention(surface, lang::ger(), Source::kWiktionary));
        }
    }
    return {std::move(wumls), report};
}

} // namespace medlex
