#include "medlex/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "medlex/stemmer.hpp"
#include "medlex/unicode.hpp"

namespace medlex {

std::string to_string(Topic topic) {
    switch (topic) {
        case Topic::kKidney: return "kidney";
        case Topic::kStomachIntestines: return "stomach_intestines";
        case Topic::kOther: return "other";
    }
    return "other";
}

std::string to_string(SpanLabel label) {
    return label == SpanLabel::kLay ? "Lay" : "Technical";
}

namespace {

double round2(double x) {
    return std::floor(x * 100.0 + 0.5) / 100.0;
}

double pct(std::size_t num, std::size_t den) {
    if (den == 0) return 0.0;
    return round2(100.0 * static_cast<double>(num) / static_cast<double>(den));
}

std::optional<SpanLabel> parse_label(std::string_view s) {
    std::string lower;
    for (char c : s) lower.push_back(static_cast<char>(std::tolower(
        static_cast<unsigned char>(c))));
    if (lower == "lay") return SpanLabel::kLay;
    if (lower == "technical") return SpanLabel::kTechnical;
    return std::nullopt;
}

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
            fields.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

} // namespace

AnnotatedDocument parse_standoff(std::string doc_id, Topic topic,
                                 std::string text, std::istream& ann) {
    AnnotatedDocument doc;
    doc.doc_id = std::move(doc_id);
    doc.topic = topic;
    doc.text = std::move(text);
    const std::u32string text32 = utf8_decode(doc.text);

    std::map<std::string, std::size_t> by_id; // annotation id -> position
    std::string line;
    std::size_t lineno = 0;
    auto fail = [&](const std::string& what) -> void {
        throw ParseError(doc.doc_id + " line " + std::to_string(lineno) + ": " + what);
    };

    while (std::getline(ann, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (line[0] == 'T') {
            const auto fields = split_tabs(line);
            if (fields.size() != 3) fail("expected 3 tab-separated fields");
            Annotation a;
            a.id = fields[0];
            if (by_id.count(a.id) > 0) fail("duplicate annotation id " + a.id);
            std::istringstream middle(fields[1]);
            std::string label_token;
            long long start = -1, end = -1;
            middle >> label_token >> start >> end;
            std::string rest;
            if (!middle || (middle >> rest, !rest.empty())) {
                fail("expected LABEL START END");
            }
            const auto label = parse_label(label_token);
            if (!label) fail("unknown label '" + label_token + "'");
            a.label = *label;
            if (start < 0 || end < 0) fail("negative span offset");
            a.start = static_cast<std::size_t>(start);
            a.end = static_cast<std::size_t>(end);
            a.surface = fields[2];
            if (a.start >= a.end || a.end > text32.size()) {
                throw ValidationError(doc.doc_id + ": annotation " + a.id +
                                      " has span " + std::to_string(a.start) +
                                      ".." + std::to_string(a.end) +
                                      " outside the text");
            }
            const std::string slice = utf8_encode(
                text32.substr(a.start, a.end - a.start));
            if (slice != a.surface) {
                throw ValidationError(doc.doc_id + ": annotation " + a.id +
                                      " surface '" + a.surface +
                                      "' does not match text slice '" + slice + "'");
            }
            by_id[a.id] = doc.annotations.size();
            doc.annotations.push_back(std::move(a));
        } else if (line[0] == '#') {
            const auto fields = split_tabs(line);
            if (fields.size() != 3) fail("expected 3 tab-separated fields");
            std::istringstream middle(fields[1]);
            std::string kind, target;
            middle >> kind >> target;
            if (kind != "AnnotatorNotes" || target.empty()) {
                fail("expected AnnotatorNotes T<n>");
            }
            const auto it = by_id.find(target);
            if (it == by_id.end()) {
                throw ValidationError(doc.doc_id + ": note for unknown annotation " +
                                      target);
            }
            doc.annotations[it->second].counterpart = fields[2];
        }
        // other standoff line types (relations, attributes, events) are
        // outside the schema and ignored
    }
    if (ann.bad()) throw IoError("error reading annotation stream");
    return doc;
}

std::string serialize_annotations(const AnnotatedDocument& doc) {
    std::ostringstream out;
    std::size_t note = 0;
    for (const Annotation& a : doc.annotations) {
        out << a.id << '\t' << to_string(a.label) << ' ' << a.start << ' '
            << a.end << '\t' << a.surface << '\n';
        if (!a.counterpart.empty()) {
            out << '#' << ++note << "\tAnnotatorNotes " << a.id << '\t'
                << a.counterpart << '\n';
        }
    }
    return out.str();
}

namespace {

Topic topic_from_dirname(std::string name) {
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) {
        return c == '-' ? '_' : static_cast<char>(std::tolower(c));
    });
    if (name == "kidney") return Topic::kKidney;
    if (name == "stomach_intestines") return Topic::kStomachIntestines;
    return Topic::kOther;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading " + path.string());
    return buf.str();
}

} // namespace

std::vector<AnnotatedDocument> read_corpus_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw IoError("corpus directory not found: " + dir.string());
    }
    std::vector<std::pair<std::filesystem::path, Topic>> texts;
    auto collect = [&](const std::filesystem::path& where, Topic topic) {
        for (const auto& entry : std::filesystem::directory_iterator(where)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt") {
                texts.emplace_back(entry.path(), topic);
            }
        }
    };
    collect(dir, Topic::kOther);
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_directory()) {
            collect(entry.path(), topic_from_dirname(entry.path().filename().string()));
        }
    }
    std::sort(texts.begin(), texts.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<AnnotatedDocument> docs;
    for (const auto& [txt_path, topic] : texts) {
        std::filesystem::path ann_path = txt_path;
        ann_path.replace_extension(".ann");
        if (!std::filesystem::exists(ann_path)) continue;
        std::filesystem::path rel = std::filesystem::relative(txt_path, dir);
        rel.replace_extension();
        std::ifstream ann(ann_path, std::ios::binary);
        if (!ann) throw IoError("cannot read " + ann_path.string());
        docs.push_back(parse_standoff(rel.generic_string(), topic,
                                      read_file(txt_path), ann));
    }
    return docs;
}

CorpusStats corpus_stats(const std::vector<AnnotatedDocument>& documents) {
    CorpusStats stats;
    std::map<std::string, std::size_t> annotation_counts;
    std::map<std::string, std::set<std::string>> unique_surfaces;
    for (const auto& doc : documents) {
        auto& topic = stats.per_topic[to_string(doc.topic)];
        topic.files += 1;
        std::istringstream tokens(doc.text);
        std::string token;
        while (tokens >> token) topic.tokens += 1;
        annotation_counts[to_string(doc.topic)] += doc.annotations.size();
        for (const Annotation& a : doc.annotations) {
            auto& label = stats.per_label[to_string(a.label)];
            label.total += 1;
            unique_surfaces[to_string(a.label)].insert(case_fold(a.surface));
        }
    }
    for (auto& [name, topic] : stats.per_topic) {
        if (topic.files > 0) {
            topic.avg_tokens_per_file = round2(
                static_cast<double>(topic.tokens) / static_cast<double>(topic.files));
            topic.avg_annotations_per_file = round2(
                static_cast<double>(annotation_counts[name]) /
                static_cast<double>(topic.files));
        }
    }
    for (auto& [name, label] : stats.per_label) {
        label.unique = unique_surfaces[name].size();
    }
    return stats;
}

namespace {

std::vector<std::string> collect_terms(
    const std::vector<AnnotatedDocument>& documents, SpanLabel label,
    bool unique_terms) {
    std::vector<std::string> terms;
    std::set<std::string> seen;
    for (const auto& doc : documents) {
        for (const Annotation& a : doc.annotations) {
            if (a.label != label) continue;
            std::string folded = case_fold(a.surface);
            if (unique_terms && !seen.insert(folded).second) continue;
            terms.push_back(std::move(folded));
        }
    }
    if (unique_terms) std::sort(terms.begin(), terms.end());
    return terms;
}

CoverageReport coverage(const std::vector<std::string>& terms,
                        const MentionIndex& index, const SsdTable* ssd) {
    CoverageReport report;
    report.total_terms = terms.size();
    double score_sum = 0.0;
    std::map<int, std::size_t> histogram;
    for (const std::string& term : terms) {
        const NormalizationResult result = normalize(index, term);
        if (!result.found) continue;
        report.normalized += 1;
        if (ssd == nullptr) continue;
        if (const auto score = matched_score(result, *ssd)) {
            report.scored_matches += 1;
            score_sum += *score;
            histogram[static_cast<int>(std::floor(*score / 10.0)) * 10] += 1;
        }
        if (!simplify(index, *ssd, term).empty()) report.easier_found += 1;
    }
    report.normalized_pct = pct(report.normalized, report.total_terms);
    report.easier_pct = pct(report.easier_found, report.normalized);
    if (report.scored_matches > 0) {
        report.mean_h_dist_of_matches =
            round2(score_sum / static_cast<double>(report.scored_matches));
    }
    report.h_dist_histogram.assign(histogram.begin(), histogram.end());
    return report;
}

} // namespace

CoverageReport run_experiment_1(const std::vector<AnnotatedDocument>& documents,
                                const MentionIndex& index, const SsdTable& ssd,
                                bool unique_terms) {
    return coverage(collect_terms(documents, SpanLabel::kTechnical, unique_terms),
                    index, &ssd);
}

std::pair<CoverageReport, CoverageReport> run_experiment_2(
    const std::vector<AnnotatedDocument>& documents,
    const MentionIndex& umls_index, const MentionIndex& wumls_index,
    const SsdTable* umls_ssd, const SsdTable* wumls_ssd, bool unique_terms) {
    const auto terms = collect_terms(documents, SpanLabel::kLay, unique_terms);
    return {coverage(terms, umls_index, umls_ssd),
            coverage(terms, wumls_index, wumls_ssd)};
}

std::vector<SweepRow> threshold_sweep(const std::vector<JudgedPair>& pairs,
                                      const std::vector<double>& thresholds,
                                      SweepDirection direction) {
    if (pairs.empty()) throw ValidationError("threshold sweep over empty input");
    std::vector<SweepRow> rows;
    rows.reserve(thresholds.size());
    for (double threshold : thresholds) {
        SweepRow row;
        row.threshold = threshold;
        std::size_t easier = 0, equal = 0;
        for (const JudgedPair& pair : pairs) {
            const bool survives = direction == SweepDirection::kAtLeast
                                      ? pair.gap >= threshold
                                      : pair.gap <= threshold;
            if (!survives) continue;
            row.instances += 1;
            if (pair.judgment == Judgment::kEasier) ++easier;
            if (pair.judgment == Judgment::kEqual) ++equal;
        }
        if (row.instances > 0) {
            const auto n = static_cast<double>(row.instances);
            row.pct_easier = static_cast<long>(
                std::floor(100.0 * static_cast<double>(easier) / n + 0.5));
            row.pct_easier_or_equal = static_cast<long>(
                std::floor(100.0 * static_cast<double>(easier + equal) / n + 0.5));
        }
        rows.push_back(row);
    }
    return rows;
}

namespace {

std::vector<std::string> parse_csv_record(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

std::string lower_ascii(std::string_view s) {
    std::string out;
    for (char c : s) out.push_back(static_cast<char>(std::tolower(
        static_cast<unsigned char>(c))));
    return out;
}

bool parse_yes_no(std::string_view s, std::size_t lineno) {
    const std::string v = lower_ascii(trim(s));
    if (v == "yes" || v == "y" || v == "1" || v == "true") return true;
    if (v == "no" || v == "n" || v == "0" || v == "false") return false;
    throw ValidationError("sheet line " + std::to_string(lineno) +
                          ": expected yes/no, got '" + std::string(s) + "'");
}

double parse_number(std::string_view s, std::size_t lineno) {
    try {
        return std::stod(std::string(trim(s)));
    } catch (const std::exception&) {
        throw ValidationError("sheet line " + std::to_string(lineno) +
                              ": bad number '" + std::string(s) + "'");
    }
}

} // namespace

std::vector<JudgedPair> read_judged_sheet(std::istream& in, SampleMode mode) {
    std::vector<JudgedPair> pairs;
    std::string line;
    std::size_t lineno = 0;
    bool header_skipped = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        if (!header_skipped) {
            header_skipped = true;
            continue;
        }
        const auto fields = parse_csv_record(line);
        JudgedPair pair;
        if (mode == SampleMode::kLowestVsHighest) {
            if (fields.size() < 7) {
                throw ValidationError("sheet line " + std::to_string(lineno) +
                                      ": expected 7 columns");
            }
            pair.gap = parse_number(fields[5], lineno);
            const std::string judgment = lower_ascii(trim(fields[6]));
            if (judgment == "easier") pair.judgment = Judgment::kEasier;
            else if (judgment == "equal") pair.judgment = Judgment::kEqual;
            else if (judgment == "harder") pair.judgment = Judgment::kHarder;
            else {
                throw ValidationError("sheet line " + std::to_string(lineno) +
                                      ": expected easier/equal/harder, got '" +
                                      fields[6] + "'");
            }
        } else {
            if (fields.size() < 5) {
                throw ValidationError("sheet line " + std::to_string(lineno) +
                                      ": expected 5 columns");
            }
            pair.gap = parse_number(fields[2], lineno);
            const bool def1 = parse_yes_no(fields[3], lineno);
            const bool def2 = parse_yes_no(fields[4], lineno);
            // relabeled: technical under definition 1 / only under
            // definition 2 / under neither
            pair.judgment = def1 ? Judgment::kEasier
                                 : def2 ? Judgment::kEqual : Judgment::kHarder;
        }
        pairs.push_back(pair);
    }
    if (in.bad()) throw IoError("error reading sheet stream");
    return pairs;
}

std::string render_sweep_table(const std::vector<SweepRow>& rows,
                               SweepDirection direction) {
    const bool at_least = direction == SweepDirection::kAtLeast;
    std::vector<std::string> labels = {
        at_least ? "distance (>=)" : "distance (<=)",
        "#instances",
        at_least ? "%is-easier" : "%definition-1",
        at_least ? "%is-easier-or-equal" : "%definition-2",
    };
    std::size_t label_width = 0;
    for (const auto& l : labels) label_width = std::max(label_width, l.size());

    auto cell = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };
    std::ostringstream out;
    for (std::size_t r = 0; r < 4; ++r) {
        out << labels[r];
        out << std::string(label_width - labels[r].size(), ' ');
        for (const SweepRow& row : rows) {
            std::string value;
            switch (r) {
                case 0: value = cell(row.threshold); break;
                case 1: value = std::to_string(row.instances); break;
                case 2: value = std::to_string(row.pct_easier); break;
                case 3: value = std::to_string(row.pct_easier_or_equal); break;
            }
            out << ' ' << std::string(value.size() < 6 ? 6 - value.size() : 0, ' ')
                << value;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace medlex
