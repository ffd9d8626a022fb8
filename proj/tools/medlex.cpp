// medlex - build and query a German technical/lay medical lexicon.
//
// Subcommands chain into a pipeline: ingest-umls and ingest-wiktionary
// produce a lexicon snapshot and an entry list, align merges them into
// WUMLS, score ranks each concept's German synonyms by technicality,
// build-index / normalize / simplify resolve free-text terms, and the
// corpus-* / experiment* / sweep commands run the evaluation harness.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "medlex/align.hpp"
#include "medlex/corpus.hpp"
#include "medlex/normalize.hpp"
#include "medlex/pipeline.hpp"
#include "medlex/reports.hpp"
#include "medlex/wiktionary.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

using namespace medlex;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    auto out = open_output(path);
    out << content;
    if (!out) throw IoError("error writing " + path);
}

MentionIndex load_index(const std::string& path) {
    auto in = open_input(path);
    return read_index(in);
}

SsdTable load_ssd(const std::string& path) {
    auto in = open_input(path);
    return SsdTable::from_stream(in);
}

std::vector<double> parse_thresholds(const std::string& spec) {
    std::vector<double> values;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        values.push_back(std::stod(item));
    }
    if (values.empty()) throw ValidationError("no thresholds given");
    return values;
}

struct GlobalFlags {
    bool quiet = false;
    unsigned jobs = 1;
    std::uint64_t seed = 42;
};

void log_line(const GlobalFlags& flags, const std::string& message) {
    if (!flags.quiet) std::cerr << message << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"German technical/lay medical lexicon toolkit"};
    app.require_subcommand(1);
    GlobalFlags flags;
    app.add_flag("--quiet", flags.quiet, "suppress progress output");
    app.add_option("--jobs", flags.jobs, "worker thread cap")->capture_default_str();
    app.add_option("--seed", flags.seed, "random seed")->capture_default_str();

    // ingest-umls
    auto* ingest_umls = app.add_subcommand(
        "ingest-umls", "parse a pipe-delimited concept table into a snapshot");
    std::string iu_concepts, iu_sty, iu_out, iu_columns, iu_languages, iu_filter;
    std::size_t iu_min_mentions = 1;
    ingest_umls->add_option("--concepts", iu_concepts, "concept table")->required();
    ingest_umls->add_option("--sty-file", iu_sty, "CUI|STY table");
    ingest_umls->add_option("--out", iu_out, "snapshot output path")->required();
    ingest_umls->add_option("--columns", iu_columns,
                            "column spec, e.g. cui=0,lang=1,str=14,suppress=16");
    ingest_umls->add_option("--languages", iu_languages,
                            "comma-separated list (default GER,ENG,FRE)");
    ingest_umls->add_option("--sty-filter", iu_filter,
                            "default9, none, or a comma-separated list; "
                            "filters concepts before export");
    ingest_umls->add_option("--min-mentions", iu_min_mentions,
                            "drop concepts with fewer mentions");

    // ingest-wiktionary
    auto* ingest_wik = app.add_subcommand(
        "ingest-wiktionary", "extract medical entries from an XML dump");
    std::string iw_dump, iw_out, iw_categories, iw_pattern = "krank";
    bool iw_no_filter = false;
    ingest_wik->add_option("--dump", iw_dump, "XML dump path")->required();
    ingest_wik->add_option("--out", iw_out, "JSON-lines output path")->required();
    ingest_wik->add_option("--categories", iw_categories,
                           "comma-separated category list (default: medical)");
    ingest_wik->add_option("--pattern", iw_pattern,
                           "substring that also keeps an entry")->capture_default_str();
    ingest_wik->add_flag("--no-filter", iw_no_filter, "keep every entry");

    // align
    auto* align_cmd = app.add_subcommand(
        "align", "merge Wiktionary entries into the lexicon (WUMLS)");
    std::string al_umls, al_wik, al_out, al_report;
    bool al_emit_unaligned = false, al_match_synonyms = false;
    align_cmd->add_option("--umls", al_umls, "lexicon snapshot")->required();
    align_cmd->add_option("--wiktionary", al_wik, "entries JSON-lines")->required();
    align_cmd->add_option("--out", al_out, "WUMLS snapshot output")->required();
    align_cmd->add_option("--report", al_report, "alignment report JSON");
    align_cmd->add_flag("--emit-unaligned", al_emit_unaligned,
                        "add unmatched entries as WIK: concepts");
    align_cmd->add_flag("--match-synonyms", al_match_synonyms,
                        "match synonyms against the lexicon too");

    // score
    auto* score_cmd = app.add_subcommand(
        "score", "rank each concept's German synonyms by technicality");
    std::string sc_lexicon, sc_out, sc_filter = "default9", sc_scale = "percent";
    score_cmd->add_option("--lexicon", sc_lexicon, "lexicon snapshot")->required();
    score_cmd->add_option("--out", sc_out, "SSD TSV output")->required();
    score_cmd->add_option("--sty-filter", sc_filter,
                          "default9, none, or a list")->capture_default_str();
    score_cmd->add_option("--scale", sc_scale, "percent or raw")->capture_default_str();

    // sample
    auto* sample_cmd = app.add_subcommand(
        "sample", "draw an evaluation sheet from an SSD");
    std::string sa_ssd, sa_out, sa_mode = "lowest";
    std::size_t sa_n = 300;
    sample_cmd->add_option("--ssd", sa_ssd, "SSD TSV")->required();
    sample_cmd->add_option("--out", sa_out, "CSV output (default stdout)");
    sample_cmd->add_option("--mode", sa_mode, "lowest or pairs")->capture_default_str();
    sample_cmd->add_option("--n", sa_n, "sample size")->capture_default_str();

    // build-index
    auto* index_cmd = app.add_subcommand(
        "build-index", "build the exact+stemmed mention index");
    std::string bi_lexicon, bi_out;
    index_cmd->add_option("--lexicon", bi_lexicon, "lexicon snapshot")->required();
    index_cmd->add_option("--out", bi_out, "index output path")->required();

    // normalize
    auto* normalize_cmd = app.add_subcommand(
        "normalize", "resolve terms to concept identifiers");
    std::string no_index, no_term, no_terms_file, no_out;
    bool no_exact_only = false;
    normalize_cmd->add_option("--index", no_index, "index file")->required();
    normalize_cmd->add_option("--term", no_term, "single query");
    normalize_cmd->add_option("--terms-file", no_terms_file,
                              "newline-separated batch queries");
    normalize_cmd->add_option("--out", no_out, "TSV output (default stdout)");
    normalize_cmd->add_flag("--exact-only", no_exact_only,
                            "disable the stemmed fallback");

    // simplify
    auto* simplify_cmd = app.add_subcommand(
        "simplify", "list easier synonyms for a technical term");
    std::string si_index, si_ssd, si_term, si_out;
    simplify_cmd->add_option("--index", si_index, "index file")->required();
    simplify_cmd->add_option("--ssd", si_ssd, "SSD TSV")->required();
    simplify_cmd->add_option("--term", si_term, "query term")->required();
    simplify_cmd->add_option("--out", si_out, "TSV output (default stdout)");

    // corpus-stats
    auto* stats_cmd = app.add_subcommand(
        "corpus-stats", "per-topic and per-label corpus statistics");
    std::string cs_dir, cs_out;
    stats_cmd->add_option("--dir", cs_dir, "corpus directory")->required();
    stats_cmd->add_option("--out", cs_out, "JSON output (default stdout)");

    // experiment1
    auto* exp1_cmd = app.add_subcommand(
        "experiment1", "normalization + simplification of technical terms");
    std::string e1_dir, e1_index, e1_ssd, e1_out;
    bool e1_per_occurrence = false;
    exp1_cmd->add_option("--dir", e1_dir, "corpus directory")->required();
    exp1_cmd->add_option("--index", e1_index, "index file")->required();
    exp1_cmd->add_option("--ssd", e1_ssd, "SSD TSV")->required();
    exp1_cmd->add_option("--out", e1_out, "JSON output (default stdout)");
    exp1_cmd->add_flag("--per-occurrence", e1_per_occurrence,
                       "count every occurrence instead of unique terms");

    // experiment2
    auto* exp2_cmd = app.add_subcommand(
        "experiment2", "normalization of lay terms under UMLS and WUMLS");
    std::string e2_dir, e2_umls_index, e2_wumls_index, e2_umls_ssd, e2_wumls_ssd,
        e2_out;
    bool e2_per_occurrence = false;
    exp2_cmd->add_option("--dir", e2_dir, "corpus directory")->required();
    exp2_cmd->add_option("--umls-index", e2_umls_index, "UMLS index")->required();
    exp2_cmd->add_option("--wumls-index", e2_wumls_index, "WUMLS index")->required();
    exp2_cmd->add_option("--umls-ssd", e2_umls_ssd, "UMLS SSD (score stats)");
    exp2_cmd->add_option("--wumls-ssd", e2_wumls_ssd, "WUMLS SSD (score stats)");
    exp2_cmd->add_option("--out", e2_out, "JSON output (default stdout)");
    exp2_cmd->add_flag("--per-occurrence", e2_per_occurrence,
                       "count every occurrence instead of unique terms");

    // sweep
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "threshold sweep over a filled judgment sheet");
    std::string sw_sheet, sw_thresholds = "0,5,10,15,20,25,30,35,40,45,50",
                sw_mode = "pairs", sw_out;
    sweep_cmd->add_option("--sheet", sw_sheet, "judged CSV sheet")->required();
    sweep_cmd->add_option("--thresholds", sw_thresholds,
                          "comma-separated thresholds")->capture_default_str();
    sweep_cmd->add_option("--mode", sw_mode, "pairs or lowest")->capture_default_str();
    sweep_cmd->add_option("--out", sw_out, "JSON output (text table on stdout)");

    // pipeline
    auto* pipeline_cmd = app.add_subcommand(
        "pipeline", "run the full pipeline from a config file");
    std::string pl_config, pl_out_dir;
    pipeline_cmd->add_option("--config", pl_config, "config file")->required();
    pipeline_cmd->add_option("--out-dir", pl_out_dir, "override output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*ingest_umls) {
            IngestConfig config;
            if (!iu_columns.empty()) config.columns = parse_columns_spec(iu_columns);
            if (!iu_languages.empty()) config.languages = parse_language_list(iu_languages);
            config.min_mentions = iu_min_mentions;
            auto in = open_input(iu_concepts);
            UmlsParseResult result = parse_concept_table(in, config);
            if (!iu_sty.empty()) {
                auto sty_in = open_input(iu_sty);
                const auto sty_stats = attach_semantic_types(result.lexicon, sty_in);
                log_line(flags, "semantic types: " +
                                    std::to_string(sty_stats.attached) + " attached, " +
                                    std::to_string(sty_stats.unknown_cui) +
                                    " unknown CUIs");
            }
            if (!iu_filter.empty()) {
                if (const auto filter = parse_sty_filter(iu_filter)) {
                    result.lexicon = filter_by_semantic_types(result.lexicon, *filter);
                }
            }
            save_lexicon(result.lexicon, iu_out);
            log_line(flags, "umls: " + std::to_string(result.lexicon.size()) +
                                " concepts, " +
                                std::to_string(result.stats.mentions_added) +
                                " mentions, " +
                                std::to_string(result.stats.malformed) +
                                " malformed lines");
        } else if (*ingest_wik) {
            auto in = open_input(iw_dump);
            DumpStats stats;
            auto entries = parse_dump(in, &stats);
            if (!iw_no_filter) {
                std::set<std::string> categories;
                if (!iw_categories.empty()) {
                    std::stringstream ss(iw_categories);
                    std::string item;
                    while (std::getline(ss, item, ',')) {
                        if (!item.empty()) categories.insert(item);
                    }
                }
                entries = filter_medical(
                    entries,
                    categories.empty() ? default_medical_categories() : categories,
                    iw_pattern);
            }
            auto out = open_output(iw_out);
            write_entries_jsonl(entries, out);
            log_line(flags, "wiktionary: " + std::to_string(stats.pages) +
                                " pages, " + std::to_string(stats.entries) +
                                " entries, " + std::to_string(entries.size()) +
                                " kept, " +
                                std::to_string(stats.skipped_unparseable) +
                                " unparseable");
        } else if (*align_cmd) {
            const Lexicon umls = load_lexicon(al_umls);
            auto in = open_input(al_wik);
            const auto entries = read_entries_jsonl(in);
            AlignOptions options;
            options.emit_unaligned = al_emit_unaligned;
            options.match_synonyms = al_match_synonyms;
            const auto [wumls, report] = align(entries, umls, options);
            save_lexicon(wumls, al_out);
            if (!al_report.empty()) emit(al_report, to_json(report));
            log_line(flags, "align: " + std::to_string(report.aligned_entries) +
                                " aligned, " +
                                std::to_string(report.ambiguous_entries) +
                                " ambiguous, " +
                                std::to_string(report.unmatched_entries) +
                                " unmatched, +" +
                                std::to_string(report.added_mentions) + " mentions");
        } else if (*score_cmd) {
            const Lexicon lexicon = load_lexicon(sc_lexicon);
            ScoringOptions options;
            if (sc_scale == "raw") options.scale = ScoreScale::kRaw;
            else if (sc_scale != "percent") {
                throw ValidationError("--scale must be percent or raw");
            }
            const auto ssd =
                build_ssd(lexicon, parse_sty_filter(sc_filter), options, flags.jobs);
            auto out = open_output(sc_out);
            write_ssd(ssd, out);
            log_line(flags, "ssd: " + std::to_string(ssd.size()) + " concepts");
        } else if (*sample_cmd) {
            SampleMode mode;
            if (sa_mode == "lowest") mode = SampleMode::kLowestOnly;
            else if (sa_mode == "pairs") mode = SampleMode::kLowestVsHighest;
            else throw ValidationError("--mode must be lowest or pairs");
            auto in = open_input(sa_ssd);
            const auto entries = read_ssd_entries(in);
            emit(sa_out, make_evaluation_sheet(entries, sa_n, mode, flags.seed));
        } else if (*index_cmd) {
            const Lexicon lexicon = load_lexicon(bi_lexicon);
            const MentionIndex index = build_index(lexicon);
            auto out = open_output(bi_out);
            write_index(index, out);
            log_line(flags, "index: " + std::to_string(index.exact.size()) +
                                " exact keys, " +
                                std::to_string(index.stemmed.size()) +
                                " stemmed keys");
        } else if (*normalize_cmd) {
            if (no_term.empty() == no_terms_file.empty()) {
                throw CLI::ValidationError(
                    "normalize", "exactly one of --term / --terms-file is required");
            }
            const MentionIndex index = load_index(no_index);
            std::vector<std::string> queries;
            if (!no_term.empty()) {
                queries.push_back(no_term);
            } else {
                auto in = open_input(no_terms_file);
                std::string line;
                while (std::getline(in, line)) {
                    if (!line.empty() && line.back() == '\r') line.pop_back();
                    if (!line.empty()) queries.push_back(line);
                }
            }
            std::ostringstream out;
            for (const auto& query : queries) {
                const auto result = normalize(index, query, no_exact_only);
                out << query << '\t' << (result.found ? "1" : "0") << '\t';
                for (std::size_t i = 0; i < result.matches.size(); ++i) {
                    if (i > 0) out << ',';
                    out << result.matches[i].first;
                }
                out << '\t'
                    << (result.found ? to_string(result.matches.front().second)
                                     : "")
                    << '\n';
            }
            emit(no_out, out.str());
        } else if (*simplify_cmd) {
            const MentionIndex index = load_index(si_index);
            const SsdTable ssd = load_ssd(si_ssd);
            std::ostringstream out;
            for (const auto& [surface, h] : simplify(index, ssd, si_term)) {
                out << surface << '\t' << format_score(h) << '\n';
            }
            emit(si_out, out.str());
        } else if (*stats_cmd) {
            emit(cs_out, to_json(corpus_stats(read_corpus_dir(cs_dir))));
        } else if (*exp1_cmd) {
            const auto documents = read_corpus_dir(e1_dir);
            const MentionIndex index = load_index(e1_index);
            const SsdTable ssd = load_ssd(e1_ssd);
            emit(e1_out, to_json(run_experiment_1(documents, index, ssd,
                                                  !e1_per_occurrence)));
        } else if (*exp2_cmd) {
            const auto documents = read_corpus_dir(e2_dir);
            const MentionIndex umls_index = load_index(e2_umls_index);
            const MentionIndex wumls_index = load_index(e2_wumls_index);
            std::optional<SsdTable> umls_ssd, wumls_ssd;
            if (!e2_umls_ssd.empty()) umls_ssd = load_ssd(e2_umls_ssd);
            if (!e2_wumls_ssd.empty()) wumls_ssd = load_ssd(e2_wumls_ssd);
            const auto [umls_report, wumls_report] = run_experiment_2(
                documents, umls_index, wumls_index,
                umls_ssd ? &*umls_ssd : nullptr,
                wumls_ssd ? &*wumls_ssd : nullptr, !e2_per_occurrence);
            emit(e2_out, experiment2_json(umls_report, wumls_report));
        } else if (*sweep_cmd) {
            SampleMode mode;
            SweepDirection direction;
            if (sw_mode == "pairs") {
                mode = SampleMode::kLowestVsHighest;
                direction = SweepDirection::kAtLeast;
            } else if (sw_mode == "lowest") {
                mode = SampleMode::kLowestOnly;
                direction = SweepDirection::kAtMost;
            } else {
                throw ValidationError("--mode must be pairs or lowest");
            }
            auto in = open_input(sw_sheet);
            const auto pairs = read_judged_sheet(in, mode);
            const auto rows =
                threshold_sweep(pairs, parse_thresholds(sw_thresholds), direction);
            std::cout << render_sweep_table(rows, direction);
            if (!sw_out.empty()) {
                std::ostringstream json;
                json << "[\n";
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    json << "  {\"threshold\": " << rows[i].threshold
                         << ", \"instances\": " << rows[i].instances
                         << ", \"pct_easier\": " << rows[i].pct_easier
                         << ", \"pct_easier_or_equal\": "
                         << rows[i].pct_easier_or_equal << "}"
                         << (i + 1 < rows.size() ? "," : "") << "\n";
                }
                json << "]\n";
                emit(sw_out, json.str());
            }
        } else if (*pipeline_cmd) {
            PipelineConfig config = PipelineConfig::load(pl_config);
            if (!pl_out_dir.empty()) config.out_dir = pl_out_dir;
            config.jobs = std::max(config.jobs, flags.jobs);
            run_pipeline(config, flags.quiet ? nullptr : &std::cerr);
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "medlex: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "medlex: " << e.what() << '\n';
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "medlex: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "medlex: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}
