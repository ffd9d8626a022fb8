#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medlex/normalize.hpp"
#include "medlex/technicality.hpp"

namespace medlex {

enum class Topic { kKidney, kStomachIntestines, kOther };
std::string to_string(Topic topic);

enum class SpanLabel { kLay, kTechnical };
std::string to_string(SpanLabel label);

/// One annotated span. Offsets count Unicode scalar values into the
/// document text, surface is the covered slice, counterpart carries the
/// annotator's free-text technical/lay equivalent (may be empty).
struct Annotation {
    std::string id;
    SpanLabel label = SpanLabel::kLay;
    std::size_t start = 0;
    std::size_t end = 0;
    std::string surface;
    std::string counterpart;
};

struct AnnotatedDocument {
    std::string doc_id;
    Topic topic = Topic::kOther;
    std::string text;
    std::vector<Annotation> annotations;
};

/// Parses brat standoff annotations: `T<n>\t<Label> <start> <end>\t<surface>`
/// span lines with `#<n>\tAnnotatorNotes T<n>\t<counterpart>` note lines.
/// Lines of other standoff types are ignored. Malformed lines raise
/// ParseError with the line number; a surface/offset mismatch raises
/// ValidationError naming the annotation id.
AnnotatedDocument parse_standoff(std::string doc_id, Topic topic,
                                 std::string text, std::istream& ann);

/// Canonical standoff serialization: span line, then a note line when
/// the counterpart is non-empty, in annotation order.
std::string serialize_annotations(const AnnotatedDocument& doc);

/// Loads all `.txt` files with a sibling `.ann` under dir (recursing one
/// level). Subdirectory names kidney / stomach_intestines (hyphen or
/// underscore) set the topic; anything else is OTHER. Deterministic,
/// path-sorted order.
std::vector<AnnotatedDocument> read_corpus_dir(const std::filesystem::path& dir);

struct TopicStats {
    std::size_t files = 0;
    std::size_t tokens = 0; // whitespace tokenization
    double avg_tokens_per_file = 0.0;
    double avg_annotations_per_file = 0.0;
};

struct LabelStats {
    std::size_t total = 0;
    std::size_t unique = 0; // case-folded surfaces
};

struct CorpusStats {
    std::map<std::string, TopicStats> per_topic;
    std::map<std::string, LabelStats> per_label;
};

CorpusStats corpus_stats(const std::vector<AnnotatedDocument>& documents);

struct CoverageReport {
    std::size_t total_terms = 0;
    std::size_t normalized = 0;
    double normalized_pct = 0.0;
    std::size_t easier_found = 0;
    double easier_pct = 0.0; // share of the normalized terms
    double mean_h_dist_of_matches = 0.0;
    /// width-10 buckets of matched-mention scores: (lower bound, count)
    std::vector<std::pair<int, std::size_t>> h_dist_histogram;
    std::size_t scored_matches = 0; // matches that had an SSD score
};

/// Normalization and simplification over the TECHNICAL terms of the
/// corpus. Terms are deduplicated by folded surface unless
/// `unique_terms` is false (then every occurrence counts).
CoverageReport run_experiment_1(const std::vector<AnnotatedDocument>& documents,
                                const MentionIndex& index, const SsdTable& ssd,
                                bool unique_terms = true);

/// Normalization of LAY terms under the plain and the extended lexicon.
/// The SSD tables are optional; they only feed the score statistics.
std::pair<CoverageReport, CoverageReport> run_experiment_2(
    const std::vector<AnnotatedDocument>& documents,
    const MentionIndex& umls_index, const MentionIndex& wumls_index,
    const SsdTable* umls_ssd = nullptr, const SsdTable* wumls_ssd = nullptr,
    bool unique_terms = true);

// --- manual-judgment sweep ---------------------------------------------

enum class Judgment { kEasier, kEqual, kHarder };

struct JudgedPair {
    double gap = 0.0; // absolute score distance (or the score itself)
    Judgment judgment = Judgment::kEqual;
};

enum class SweepDirection {
    kAtLeast, // survivors have gap >= threshold (pair sheets)
    kAtMost,  // survivors have score <= threshold (lowest-only sheets)
};

struct SweepRow {
    double threshold = 0.0;
    std::size_t instances = 0;
    long pct_easier = 0;          // rounded to integer like the tables
    long pct_easier_or_equal = 0;
};

/// For each threshold: surviving pairs, %EASIER and %(EASIER or EQUAL).
/// Throws ValidationError on an empty pair list.
std::vector<SweepRow> threshold_sweep(const std::vector<JudgedPair>& pairs,
                                      const std::vector<double>& thresholds,
                                      SweepDirection direction = SweepDirection::kAtLeast);

/// Reads a filled judgment sheet. Pair sheets use the gap + judgment
/// columns (easier/equal/harder); lowest-only sheets use h_dist +
/// definition-1/definition-2 yes/no columns, relabeled to judgments.
std::vector<JudgedPair> read_judged_sheet(std::istream& in, SampleMode mode);

/// Plain-text table in the shape of the published sweep tables.
std::string render_sweep_table(const std::vector<SweepRow>& rows,
                               SweepDirection direction);

} // namespace medlex
