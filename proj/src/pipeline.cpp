#include "medlex/pipeline.hpp"

#include <fstream>
#include <ostream>

#include "medlex/align.hpp"
#include "medlex/corpus.hpp"
#include "medlex/normalize.hpp"
#include "medlex/reports.hpp"
#include "medlex/wiktionary.hpp"

namespace medlex {

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << content;
    if (!out) throw IoError("error writing " + path.string());
}

template <typename Fn>
void write_stream(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    fn(out);
    if (!out) throw IoError("error writing " + path.string());
}

} // namespace

void run_pipeline(const PipelineConfig& config, std::ostream* log) {
    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    auto note = [&](const std::string& message) {
        if (log != nullptr) *log << "pipeline: " << message << '\n';
    };

    // ingest UMLS
    IngestConfig ingest;
    ingest.languages = config.languages;
    ingest.columns = config.columns;
    std::ifstream concepts(config.umls_concepts, std::ios::binary);
    if (!concepts) throw IoError("cannot read " + config.umls_concepts.string());
    UmlsParseResult umls = parse_concept_table(concepts, ingest);
    std::ifstream sty(config.umls_sty, std::ios::binary);
    if (!sty) throw IoError("cannot read " + config.umls_sty.string());
    const StyAttachStats sty_stats = attach_semantic_types(umls.lexicon, sty);
    note("umls: " + std::to_string(umls.lexicon.size()) + " concepts, " +
         std::to_string(umls.stats.mentions_added) + " mentions, " +
         std::to_string(umls.stats.malformed) + " malformed lines, " +
         std::to_string(sty_stats.attached) + " semantic types");
    save_lexicon(umls.lexicon, config.out_dir / "umls.lex");

    // ingest Wiktionary
    std::ifstream dump(config.wiktionary_dump, std::ios::binary);
    if (!dump) throw IoError("cannot read " + config.wiktionary_dump.string());
    DumpStats dump_stats;
    const auto entries = parse_dump(dump, &dump_stats);
    const auto& categories = config.wiktionary_categories.empty()
                                 ? default_medical_categories()
                                 : config.wiktionary_categories;
    const auto medical =
        filter_medical(entries, categories, config.wiktionary_pattern);
    note("wiktionary: " + std::to_string(dump_stats.pages) + " pages, " +
         std::to_string(dump_stats.entries) + " entries, " +
         std::to_string(medical.size()) + " medical");
    write_stream(config.out_dir / "wiktionary.jsonl",
                 [&](std::ostream& out) { write_entries_jsonl(medical, out); });

    // align
    AlignOptions align_options;
    align_options.emit_unaligned = config.emit_unaligned;
    align_options.match_synonyms = config.match_synonyms;
    const auto [wumls, report] = align(medical, umls.lexicon, align_options);
    note("align: " + std::to_string(report.aligned_entries) + " aligned, " +
         std::to_string(report.ambiguous_entries) + " ambiguous, " +
         std::to_string(report.unmatched_entries) + " unmatched, " +
         std::to_string(report.added_mentions) + " mentions added");
    save_lexicon(wumls, config.out_dir / "wumls.lex");
    write_file(config.out_dir / "align_report.json", to_json(report));

    // score
    ScoringOptions scoring;
    scoring.scale = config.scale;
    const auto ssd_umls =
        build_ssd(umls.lexicon, config.sty_filter, scoring, config.jobs);
    const auto ssd_wumls = build_ssd(wumls, config.sty_filter, scoring, config.jobs);
    note("ssd: " + std::to_string(ssd_umls.size()) + " umls / " +
         std::to_string(ssd_wumls.size()) + " wumls concepts");
    write_stream(config.out_dir / "ssd_umls.tsv",
                 [&](std::ostream& out) { write_ssd(ssd_umls, out); });
    write_stream(config.out_dir / "ssd_wumls.tsv",
                 [&](std::ostream& out) { write_ssd(ssd_wumls, out); });

    // index
    const MentionIndex index_umls = build_index(umls.lexicon);
    const MentionIndex index_wumls = build_index(wumls);
    write_stream(config.out_dir / "index_umls.tsv",
                 [&](std::ostream& out) { write_index(index_umls, out); });
    write_stream(config.out_dir / "index_wumls.tsv",
                 [&](std::ostream& out) { write_index(index_wumls, out); });

    // corpus experiments
    const auto documents = read_corpus_dir(config.corpus_dir);
    note("corpus: " + std::to_string(documents.size()) + " documents");
    write_file(config.out_dir / "corpus_stats.json",
               to_json(corpus_stats(documents)));

    const SsdTable table_umls = SsdTable::from_entries(ssd_umls);
    const SsdTable table_wumls = SsdTable::from_entries(ssd_wumls);
    const auto exp1_umls = run_experiment_1(documents, index_umls, table_umls);
    const auto exp1_wumls = run_experiment_1(documents, index_wumls, table_wumls);
    write_file(config.out_dir / "experiment1_umls.json", to_json(exp1_umls));
    write_file(config.out_dir / "experiment1_wumls.json", to_json(exp1_wumls));
    note("experiment1: " + std::to_string(exp1_umls.normalized_pct) +
         "% normalized (umls)");

    const auto [exp2_umls, exp2_wumls] = run_experiment_2(
        documents, index_umls, index_wumls, &table_umls, &table_wumls);
    write_file(config.out_dir / "experiment2.json",
               experiment2_json(exp2_umls, exp2_wumls));
    note("experiment2: " + std::to_string(exp2_umls.normalized_pct) + "% -> " +
         std::to_string(exp2_wumls.normalized_pct) + "% normalized");
}

} // namespace medlex
