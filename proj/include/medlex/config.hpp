#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "medlex/technicality.hpp"
#include "medlex/umls.hpp"

namespace medlex {

/// Reads a flat `key = value` config file ('#' comments, blank lines
/// allowed, values optionally double-quoted).
std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path);

/// "default9" -> the nine-type list, "none" -> no filtering, otherwise a
/// comma-separated list of semantic types.
std::optional<std::set<std::string>> parse_sty_filter(std::string_view value);

std::set<LanguageCode> parse_language_list(std::string_view value);

struct PipelineConfig {
    std::filesystem::path umls_concepts;
    std::filesystem::path umls_sty;
    std::filesystem::path wiktionary_dump;
    std::filesystem::path corpus_dir;
    std::filesystem::path out_dir = "out";

    UmlsColumns columns;
    std::set<LanguageCode> languages{lang::ger(), lang::eng(), lang::fre()};
    std::optional<std::set<std::string>> sty_filter = default_sty_filter();
    std::set<std::string> wiktionary_categories; // empty -> defaults
    std::string wiktionary_pattern = "krank";
    ScoreScale scale = ScoreScale::kPercent;
    bool emit_unaligned = false;
    bool match_synonyms = false;
    std::uint64_t seed = 42;
    unsigned jobs = 1;

    /// Parses the file; relative paths resolve against the config file's
    /// directory. Missing input paths raise ValidationError naming the
    /// key and path.
    static PipelineConfig load(const std::filesystem::path& path);
};

} // namespace medlex
