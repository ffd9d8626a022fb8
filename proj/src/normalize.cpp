#include "medlex/normalize.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "medlex/stemmer.hpp"
#include "medlex/unicode.hpp"

namespace medlex {

MentionIndex build_index(const Lexicon& lexicon) {
    MentionIndex index;
    for (const auto& [cui, rec] : lexicon.concepts()) {
        const auto* german = rec.mentions_for(lang::ger());
        if (german == nullptr) continue;
        for (const Mention& m : *german) {
            index.exact[m.folded].insert(cui);
            index.stemmed[m.stem.empty() ? german_stem(m.folded) : m.stem]
                .insert(cui);
        }
    }
    return index;
}

std::string to_string(MatchKind kind) {
    return kind == MatchKind::kExact ? "EXACT" : "STEM";
}

NormalizationResult normalize(const MentionIndex& index, std::string_view query,
                              bool exact_only) {
    NormalizationResult result;
    result.query = std::string(query);
    const std::string folded = case_fold(query);
    if (auto it = index.exact.find(folded); it != index.exact.end()) {
        for (const std::string& cui : it->second) {
            result.matches.emplace_back(cui, MatchKind::kExact);
        }
    } else if (!exact_only) {
        const std::string stem = german_stem(folded);
        if (auto sit = index.stemmed.find(stem); sit != index.stemmed.end()) {
            for (const std::string& cui : sit->second) {
                result.matches.emplace_back(cui, MatchKind::kStem);
            }
        }
    }
    result.found = !result.matches.empty();
    return result;
}

std::optional<double> matched_score(const NormalizationResult& result,
                                    const SsdTable& ssd) {
    if (!result.found) return std::nullopt;
    const std::string folded = case_fold(result.query);
    const std::string stem = german_stem(folded);
    std::optional<double> best;
    for (const auto& [cui, kind] : result.matches) {
        const auto* rows = ssd.rows_for(cui);
        if (rows == nullptr) continue;
        for (const SsdRow& row : *rows) {
            if (!row.defined) continue;
            const std::string row_folded = case_fold(row.surface);
            const bool matches = kind == MatchKind::kExact
                                     ? row_folded == folded
                                     : german_stem(row_folded) == stem;
            if (!matches) continue;
            if (!best || row.h_dist < *best) best = row.h_dist;
        }
    }
    return best;
}

std::vector<std::pair<std::string, double>> simplify(const MentionIndex& index,
                                                     const SsdTable& ssd,
                                                     std::string_view query) {
    const NormalizationResult result = normalize(index, query);
    if (!result.found) return {};
    const auto base = matched_score(result, ssd);
    if (!base) return {};

    const std::string folded = case_fold(query);
    std::vector<std::pair<std::string, double>> easier;
    for (const auto& [cui, kind] : result.matches) {
        const auto* rows = ssd.rows_for(cui);
        if (rows == nullptr) continue;
        for (const SsdRow& row : *rows) {
            if (!row.defined || row.h_dist <= *base) continue;
            if (case_fold(row.surface) == folded) continue;
            easier.emplace_back(row.surface, row.h_dist);
        }
    }
    std::sort(easier.begin(), easier.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second; // easiest first
        return case_fold(a.first) < case_fold(b.first);
    });
    // drop duplicate surfaces contributed by several matched concepts
    std::set<std::string> seen;
    std::vector<std::pair<std::string, double>> out;
    for (auto& item : easier) {
        if (seen.insert(case_fold(item.first)).second) out.push_back(std::move(item));
    }
    return out;
}

void write_index(const MentionIndex& index, std::ostream& out) {
    for (const auto& [key, cuis] : index.exact) {
        for (const std::string& cui : cuis) {
            out << "E\t" << key << '\t' << cui << '\n';
        }
    }
    for (const auto& [key, cuis] : index.stemmed) {
        for (const std::string& cui : cuis) {
            out << "S\t" << key << '\t' << cui << '\n';
        }
    }
}

MentionIndex read_index(std::istream& in) {
    MentionIndex index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto tab1 = line.find('\t');
        const auto tab2 = tab1 == std::string::npos ? std::string::npos
                                                    : line.find('\t', tab1 + 1);
        if (tab1 == std::string::npos || tab2 == std::string::npos) {
            throw ParseError("index line " + std::to_string(lineno) +
                             ": expected KIND<TAB>KEY<TAB>CUI");
        }
        const std::string_view kind = std::string_view(line).substr(0, tab1);
        const std::string key = line.substr(tab1 + 1, tab2 - tab1 - 1);
        const std::string cui = line.substr(tab2 + 1);
        if (key.empty() || cui.empty() || (kind != "E" && kind != "S")) {
            throw ParseError("index line " + std::to_string(lineno) +
                             ": bad record");
        }
        (kind == "E" ? index.exact : index.stemmed)[key].insert(cui);
    }
    if (in.bad()) throw IoError("error reading index stream");
    return index;
}

} // namespace medlex
