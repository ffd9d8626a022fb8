#include "medlex/reports.hpp"

#include <json.hpp>

namespace medlex {

namespace {

using nlohmann::json;

json coverage_json(const CoverageReport& report) {
    json j;
    j["total_terms"] = report.total_terms;
    j["normalized"] = report.normalized;
    j["normalized_pct"] = report.normalized_pct;
    j["easier_found"] = report.easier_found;
    j["easier_pct"] = report.easier_pct;
    j["mean_h_dist_of_matches"] = report.mean_h_dist_of_matches;
    j["scored_matches"] = report.scored_matches;
    json histogram = json::array();
    for (const auto& [lo, count] : report.h_dist_histogram) {
        histogram.push_back(json::array({lo, count}));
    }
    j["h_dist_histogram"] = std::move(histogram);
    return j;
}

std::string dump(const json& j) {
    return j.dump(2) + "\n";
}

} // namespace

std::string to_json(const AlignmentReport& report) {
    json j;
    j["input_entries"] = report.input_entries;
    j["aligned_entries"] = report.aligned_entries;
    j["ambiguous_entries"] = report.ambiguous_entries;
    j["unmatched_entries"] = report.unmatched_entries;
    j["extended_cuis"] = report.extended_cuis;
    j["added_mentions"] = report.added_mentions;
    return dump(j);
}

std::string to_json(const CoverageReport& report) {
    return dump(coverage_json(report));
}

std::string to_json(const CorpusStats& stats) {
    json topics = json::object();
    for (const auto& [name, t] : stats.per_topic) {
        topics[name] = {
            {"files", t.files},
            {"tokens", t.tokens},
            {"avg_tokens_per_file", t.avg_tokens_per_file},
            {"avg_annotations_per_file", t.avg_annotations_per_file},
        };
    }
    json labels = json::object();
    for (const auto& [name, l] : stats.per_label) {
        labels[name] = {{"total", l.total}, {"unique", l.unique}};
    }
    json j;
    j["topics"] = std::move(topics);
    j["labels"] = std::move(labels);
    return dump(j);
}

std::string experiment2_json(const CoverageReport& umls,
                             const CoverageReport& wumls) {
    json j;
    j["umls"] = coverage_json(umls);
    j["wumls"] = coverage_json(wumls);
    return dump(j);
}

} // namespace medlex
