#include "medlex/config.hpp"

#include <fstream>

#include "medlex/unicode.hpp"

namespace medlex {

std::map<std::string, std::string> parse_config_file(
    const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError(path.string() + " line " + std::to_string(lineno) +
                             ": expected key = value");
        }
        const auto key = trim(stripped.substr(0, eq));
        auto value = trim(stripped.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (key.empty()) {
            throw ParseError(path.string() + " line " + std::to_string(lineno) +
                             ": empty key");
        }
        values[std::string(key)] = std::string(value);
    }
    return values;
}

std::optional<std::set<std::string>> parse_sty_filter(std::string_view value) {
    const auto stripped = trim(value);
    if (stripped == "none") return std::nullopt;
    if (stripped.empty() || stripped == "default9") return default_sty_filter();
    std::set<std::string> types;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= stripped.size(); ++i) {
        if (i == stripped.size() || stripped[i] == ',') {
            const auto piece = trim(stripped.substr(start, i - start));
            if (!piece.empty()) types.emplace(piece);
            start = i + 1;
        }
    }
    return types;
}

std::set<LanguageCode> parse_language_list(std::string_view value) {
    std::set<LanguageCode> languages;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= value.size(); ++i) {
        if (i == value.size() || value[i] == ',') {
            const auto piece = trim(value.substr(start, i - start));
            if (!piece.empty()) languages.insert(LanguageCode::from_string(piece));
            start = i + 1;
        }
    }
    if (languages.empty()) {
        throw ValidationError("language list is empty");
    }
    return languages;
}

namespace {

bool parse_bool(const std::string& value, const std::string& key) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ValidationError("config: " + key + " must be true or false, got '" +
                          value + "'");
}

} // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
    const auto values = parse_config_file(path);
    const auto base = std::filesystem::absolute(path).parent_path();
    PipelineConfig config;

    auto resolve = [&](const std::string& value) {
        std::filesystem::path p(value);
        return p.is_absolute() ? p : base / p;
    };
    auto require_path = [&](const char* key) {
        const auto it = values.find(key);
        if (it == values.end() || trim(it->second).empty()) {
            throw ValidationError("config: missing required key '" +
                                  std::string(key) + "'");
        }
        const auto p = resolve(it->second);
        if (!std::filesystem::exists(p)) {
            throw ValidationError("config: " + std::string(key) +
                                  " path does not exist: " + p.string());
        }
        return p;
    };

    config.umls_concepts = require_path("umls_concepts");
    config.umls_sty = require_path("umls_sty");
    config.wiktionary_dump = require_path("wiktionary_dump");
    config.corpus_dir = require_path("corpus_dir");
    if (auto it = values.find("out_dir"); it != values.end()) {
        config.out_dir = resolve(it->second);
    } else {
        config.out_dir = base / "out";
    }

    if (auto it = values.find("umls_columns"); it != values.end()) {
        config.columns = parse_columns_spec(it->second);
    }
    if (auto it = values.find("languages"); it != values.end()) {
        config.languages = parse_language_list(it->second);
    }
    if (auto it = values.find("sty_filter"); it != values.end()) {
        config.sty_filter = parse_sty_filter(it->second);
    }
    if (auto it = values.find("wiktionary_categories"); it != values.end()) {
        std::set<std::string> categories;
        std::size_t start = 0;
        const std::string& v = it->second;
        for (std::size_t i = 0; i <= v.size(); ++i) {
            if (i == v.size() || v[i] == ',') {
                const auto piece = trim(std::string_view(v).substr(start, i - start));
                if (!piece.empty()) categories.emplace(piece);
                start = i + 1;
            }
        }
        config.wiktionary_categories = std::move(categories);
    }
    if (auto it = values.find("wiktionary_pattern"); it != values.end()) {
        config.wiktionary_pattern = it->second;
    }
    if (auto it = values.find("scale"); it != values.end()) {
        if (it->second == "raw") config.scale = ScoreScale::kRaw;
        else if (it->second == "percent") config.scale = ScoreScale::kPercent;
        else throw ValidationError("config: scale must be percent or raw");
    }
    if (auto it = values.find("emit_unaligned"); it != values.end()) {
        config.emit_unaligned = parse_bool(it->second, "emit_unaligned");
    }
    if (auto it = values.find("match_synonyms"); it != values.end()) {
        config.match_synonyms = parse_bool(it->second, "match_synonyms");
    }
    if (auto it = values.find("seed"); it != values.end()) {
        config.seed = std::stoull(it->second);
    }
    if (auto it = values.find("jobs"); it != values.end()) {
        config.jobs = static_cast<unsigned>(std::stoul(it->second));
    }
    return config;
}

} // namespace medlex
