#pragma once

#include <iosfwd>

#include "medlex/config.hpp"

namespace medlex {

/// Runs ingest -> align -> score -> index -> experiments and writes all
/// artifacts into config.out_dir:
///
///   umls.lex / umls.lex.sty        lexicon snapshots
///   wumls.lex / wumls.lex.sty
///   wiktionary.jsonl               filtered medical entries
///   align_report.json
///   ssd_umls.tsv / ssd_wumls.tsv   sorted synonym data sets
///   index_umls.tsv / index_wumls.tsv
///   corpus_stats.json
///   experiment1_umls.json / experiment1_wumls.json
///   experiment2.json
///
/// Output bytes depend only on the inputs and the config. `log` may be
/// null to silence progress lines.
void run_pipeline(const PipelineConfig& config, std::ostream* log);

} // namespace medlex
