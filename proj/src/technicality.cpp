#include "medlex/technicality.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "medlex/unicode.hpp"

namespace medlex {

std::size_t levenshtein(std::u32string_view a, std::u32string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    // b is the shorter string; two rows over its length
    std::vector<std::size_t> prev(b.size() + 1);
    std::vector<std::size_t> cur(b.size() + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::size_t levenshtein_utf8(std::string_view a, std::string_view b) {
    return levenshtein(utf8_decode(a), utf8_decode(b));
}

namespace {

double scale_factor(ScoreScale scale) {
    return scale == ScoreScale::kPercent ? 100.0 : 1.0;
}

/// min edit distance from target to any reference; nullopt if none
std::optional<std::size_t> min_distance(const std::u32string& target,
                                        const std::vector<Mention>& refs) {
    std::optional<std::size_t> best;
    for (const Mention& r : refs) {
        const std::size_t d = levenshtein(target, utf8_decode(r.folded));
        if (!best || d < *best) best = d;
    }
    return best;
}

} // namespace

ScoredMention harmonized_distance(const Mention& target,
                                  const std::vector<Mention>& en_refs,
                                  const std::vector<Mention>& fr_refs,
                                  ScoreScale scale) {
    if (!(target.language == lang::ger())) {
        throw ValidationError("harmonized distance target must be German");
    }
    ScoredMention scored;
    scored.mention = target;
    const std::u32string folded = utf8_decode(target.folded);
    if (folded.empty()) {
        throw ValidationError("harmonized distance target has empty folded form");
    }
    std::size_t sum = 0;
    std::size_t languages_present = 0;
    for (const auto* refs : {&en_refs, &fr_refs}) {
        if (const auto d = min_distance(folded, *refs)) {
            sum += *d;
            ++languages_present;
        }
    }
    if (languages_present == 0) {
        scored.defined = false;
        scored.h_dist = 0.0;
        return scored;
    }
    scored.defined = true;
    scored.h_dist = static_cast<double>(sum) /
                    (static_cast<double>(languages_present) *
                     static_cast<double>(folded.size())) *
                    scale_factor(scale);
    return scored;
}

namespace {

ScoredMention score_against_concept(const Mention& target,
                                    const Concept& rec,
                                    const ScoringOptions& options) {
    ScoredMention scored;
    scored.mention = target;
    const std::u32string folded = utf8_decode(target.folded);
    std::size_t sum = 0;
    std::size_t languages_present = 0;
    for (const LanguageCode& lang : options.reference_languages) {
        const auto* refs = rec.mentions_for(lang);
        if (refs == nullptr) continue;
        if (const auto d = min_distance(folded, *refs)) {
            sum += *d;
            ++languages_present;
        }
    }
    if (languages_present == 0 || folded.empty()) {
        scored.defined = false;
        scored.h_dist = 0.0;
        return scored;
    }
    scored.defined = true;
    scored.h_dist = static_cast<double>(sum) /
                    (static_cast<double>(languages_present) *
                     static_cast<double>(folded.size())) *
                    scale_factor(options.scale);
    return scored;
}

bool ranked_before(const ScoredMention& a, const ScoredMention& b) {
    if (a.defined != b.defined) return a.defined; // undefined last
    if (a.defined && a.h_dist != b.h_dist) return a.h_dist < b.h_dist;
    return a.mention.folded < b.mention.folded;
}

} // namespace

SortedSynonymEntry sort_synonyms(const Concept& rec,
                                 const ScoringOptions& options) {
    const auto* german = rec.mentions_for(lang::ger());
    if (german == nullptr || german->empty()) {
        throw ValidationError("concept " + rec.cui +
                              " has no German mentions to sort");
    }
    SortedSynonymEntry entry;
    entry.cui = rec.cui;
    entry.ranked.reserve(german->size());
    for (const Mention& m : *german) {
        entry.ranked.push_back(score_against_concept(m, rec, options));
    }
    std::stable_sort(entry.ranked.begin(), entry.ranked.end(), ranked_before);
    return entry;
}

std::vector<SortedSynonymEntry> build_ssd(
    const Lexicon& lexicon,
    const std::optional<std::set<std::string>>& sty_filter,
    const ScoringOptions& options,
    unsigned jobs) {
    std::vector<const Concept*> selected;
    for (const auto& [cui, rec] : lexicon.concepts()) {
        if (sty_filter) {
            const bool keep = std::any_of(
                rec.semantic_types.begin(), rec.semantic_types.end(),
                [&](const std::string& sty) { return sty_filter->count(sty) > 0; });
            if (!keep) continue;
        }
        const auto* german = rec.mentions_for(lang::ger());
        if (german == nullptr || german->empty()) continue;
        selected.push_back(&rec);
    }

    std::vector<SortedSynonymEntry> entries(selected.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(jobs, std::thread::hardware_concurrency()));
    if (workers <= 1 || selected.size() < 2) {
        for (std::size_t i = 0; i < selected.size(); ++i) {
            entries[i] = sort_synonyms(*selected[i], options);
        }
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= selected.size()) return;
                    entries[i] = sort_synonyms(*selected[i], options);
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    return entries; // selected order == concept map order == CUI order
}

std::string format_score(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", value);
    return std::string(buf);
}

void write_ssd(const std::vector<SortedSynonymEntry>& entries, std::ostream& out) {
    for (const auto& entry : entries) {
        std::size_t rank = 1;
        for (const auto& scored : entry.ranked) {
            out << entry.cui << '\t' << rank << '\t' << scored.mention.surface
                << '\t' << format_score(scored.h_dist) << '\t'
                << (scored.defined ? '1' : '0') << '\n';
            ++rank;
        }
    }
}

std::vector<SortedSynonymEntry> read_ssd_entries(std::istream& in) {
    std::vector<SortedSynonymEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                fields.emplace_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 5) {
            throw ParseError("ssd line " + std::to_string(lineno) +
                             ": expected 5 tab-separated fields");
        }
        if (entries.empty() || entries.back().cui != fields[0]) {
            entries.push_back({fields[0], {}});
        }
        ScoredMention scored;
        scored.mention.surface = fields[2];
        scored.mention.language = lang::ger();
        scored.mention.folded = case_fold(fields[2]);
        try {
            scored.h_dist = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw ParseError("ssd line " + std::to_string(lineno) +
                             ": bad score '" + fields[3] + "'");
        }
        scored.defined = fields[4] == "1";
        entries.back().ranked.push_back(std::move(scored));
    }
    if (in.bad()) throw IoError("error reading ssd stream");
    return entries;
}

SsdTable SsdTable::from_entries(const std::vector<SortedSynonymEntry>& entries) {
    SsdTable table;
    for (const auto& entry : entries) {
        auto& rows = table.rows_[entry.cui];
        for (const auto& scored : entry.ranked) {
            rows.push_back({scored.mention.surface, scored.h_dist, scored.defined});
        }
    }
    return table;
}

SsdTable SsdTable::from_stream(std::istream& in) {
    SsdTable table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                fields.emplace_back(line.substr(start, i - start));
                start = i + 1;
            }
        }
        if (fields.size() != 5) {
            throw ParseError("ssd line " + std::to_string(lineno) +
                             ": expected 5 tab-separated fields");
        }
        SsdRow row;
        row.surface = fields[2];
        try {
            row.h_dist = std::stod(fields[3]);
        } catch (const std::exception&) {
            throw ParseError("ssd line " + std::to_string(lineno) +
                             ": bad score '" + fields[3] + "'");
        }
        row.defined = fields[4] == "1";
        table.rows_[fields[0]].push_back(std::move(row));
    }
    if (in.bad()) throw IoError("error reading ssd stream");
    return table;
}

const std::vector<SsdRow>* SsdTable::rows_for(std::string_view cui) const {
    auto it = rows_.find(cui);
    return it == rows_.end() ? nullptr : &it->second;
}

std::optional<double> SsdTable::score_for(std::string_view cui,
                                          std::string_view folded) const {
    const auto* rows = rows_for(cui);
    if (rows == nullptr) return std::nullopt;
    std::optional<double> best;
    for (const SsdRow& row : *rows) {
        if (!row.defined) continue;
        if (case_fold(row.surface) != folded) continue;
        if (!best || row.h_dist < *best) best = row.h_dist;
    }
    return best;
}

namespace {

std::string csv_field(std::string_view value) {
    const bool needs_quotes =
        value.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += '"';
    return out;
}

/// Deterministic sample of k indices out of n (partial Fisher-Yates,
/// raw engine output with modulo reduction so results do not depend on
/// any library distribution).
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                        std::uint64_t seed) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    std::mt19937_64 gen(seed);
    std::vector<std::size_t> picked;
    picked.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(gen() % (n - i));
        std::swap(pool[i], pool[j]);
        picked.push_back(pool[i]);
    }
    return picked;
}

} // namespace

std::string make_evaluation_sheet(const std::vector<SortedSynonymEntry>& ssd,
                                  std::size_t n, SampleMode mode,
                                  std::uint64_t seed) {
    std::vector<const SortedSynonymEntry*> eligible;
    for (const auto& entry : ssd) {
        const std::size_t scored = static_cast<std::size_t>(
            std::count_if(entry.ranked.begin(), entry.ranked.end(),
                          [](const ScoredMention& s) { return s.defined; }));
        if (mode == SampleMode::kLowestOnly ? scored >= 1 : scored >= 2) {
            eligible.push_back(&entry);
        }
    }
    if (n > eligible.size()) {
        throw ValidationError(
            "sample size " + std::to_string(n) + " exceeds the " +
            std::to_string(eligible.size()) + " eligible concepts");
    }

    std::ostringstream out;
    if (mode == SampleMode::kLowestOnly) {
        out << "cui,mention,h_dist,definition-1,definition-2\n";
    } else {
        out << "cui,low_mention,low_h_dist,high_mention,high_h_dist,gap,judgment\n";
    }
    if (n == 0) return out.str();

    for (std::size_t idx : sample_indices(eligible.size(), n, seed)) {
        const SortedSynonymEntry& entry = *eligible[idx];
        // defined scores are ranked first, so front() is the lowest
        const ScoredMention& lowest = entry.ranked.front();
        if (mode == SampleMode::kLowestOnly) {
            out << csv_field(entry.cui) << ',' << csv_field(lowest.mention.surface)
                << ',' << format_score(lowest.h_dist) << ",,\n";
        } else {
            const auto highest_it = std::find_if(
                entry.ranked.rbegin(), entry.ranked.rend(),
                [](const ScoredMention& s) { return s.defined; });
            const ScoredMention& highest = *highest_it;
            const double gap = std::abs(highest.h_dist - lowest.h_dist);
            out << csv_field(entry.cui) << ','
                << csv_field(lowest.mention.surface) << ','
                << format_score(lowest.h_dist) << ','
                << csv_field(highest.mention.surface) << ','
                << format_score(highest.h_dist) << ',' << format_score(gap)
                << ",\n";
        }
    }
    return out.str();
}

} // namespace medlex
