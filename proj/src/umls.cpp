#include "medlex/umls.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "medlex/unicode.hpp"

namespace medlex {

namespace {

std::vector<std::string_view> split_pipe(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '|') {
            fields.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

bool looks_like_language(std::string_view s) {
    return s.size() == 3 && std::all_of(s.begin(), s.end(), [](char c) {
        return c >= 'A' && c <= 'Z';
    });
}

} // namespace

UmlsColumns parse_columns_spec(std::string_view spec) {
    UmlsColumns cols;
    cols.suppress.reset();
    bool saw_cui = false, saw_lang = false, saw_str = false;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= spec.size(); ++i) {
        if (i != spec.size() && spec[i] != ',') continue;
        const std::string_view item = spec.substr(start, i - start);
        start = i + 1;
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw ValidationError("bad column spec item: '" + std::string(item) + "'");
        }
        const std::string_view key = item.substr(0, eq);
        std::size_t value = 0;
        try {
            value = std::stoul(std::string(item.substr(eq + 1)));
        } catch (const std::exception&) {
            throw ValidationError("bad column index in '" + std::string(item) + "'");
        }
        if (key == "cui") {
            cols.cui = value;
            saw_cui = true;
        } else if (key == "lang") {
            cols.lang = value;
            saw_lang = true;
        } else if (key == "str") {
            cols.str = value;
            saw_str = true;
        } else if (key == "suppress") {
            cols.suppress = value;
        } else {
            throw ValidationError("unknown column name: '" + std::string(key) + "'");
        }
    }
    if (!saw_cui || !saw_lang || !saw_str) {
        throw ValidationError("column spec must define cui, lang and str");
    }
    return cols;
}

const std::set<std::string>& default_sty_filter() {
    static const std::set<std::string> kTypes = {
        "Anatomical Abnormality",
        "Anatomical Structure",
        "Body Location or Region",
        "Body Part, Organ, or Organ Component",
        "Body Space or Junction",
        "Disease or Syndrome",
        "Injury or Poisoning",
        "Mental or Behavioral Dysfunction",
        "Sign or Symptom",
    };
    return kTypes;
}

void IngestConfig::validate() const {
    if (languages.find(lang::ger()) == languages.end()) {
        throw ValidationError("ingest languages must include GER");
    }
    if (min_mentions < 1) {
        throw ValidationError("min_mentions must be >= 1");
    }
}

UmlsParseResult parse_concept_table(std::istream& in, const IngestConfig& config) {
    config.validate();
    UmlsParseResult result;
    const UmlsColumns& cols = config.columns;
    const std::size_t needed =
        std::max({cols.cui, cols.lang, cols.str}) + 1;

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        ++result.stats.lines;
        const auto fields = split_pipe(line);
        if (fields.size() < needed) {
            ++result.stats.malformed;
            continue;
        }
        const std::string_view cui = fields[cols.cui];
        const std::string_view language = fields[cols.lang];
        const std::string_view surface = fields[cols.str];
        if (cui.empty() || !looks_like_language(language) ||
            trim(surface).empty()) {
            ++result.stats.malformed;
            continue;
        }
        if (cols.suppress && *cols.suppress < fields.size()) {
            const std::string_view flag = fields[*cols.suppress];
            if (flag == "Y" || flag == "y" || flag == "O" || flag == "E") {
                ++result.stats.skipped_suppressed;
                continue;
            }
        }
        const LanguageCode lc = LanguageCode::from_string(language);
        if (config.languages.find(lc) == config.languages.end()) {
            ++result.stats.skipped_language;
            continue;
        }
        Mention mention;
        try {
            mention = make_mention(surface, lc, Source::kUmls);
        } catch (const ValidationError&) { // bad surface or invalid UTF-8
            ++result.stats.malformed;
            continue;
        }
        result.lexicon.ensure_concept(cui);
        if (result.lexicon.add_mention(cui, std::move(mention))) {
            ++result.stats.mentions_added;
        } else {
            ++result.stats.duplicates;
        }
    }
    if (in.bad()) throw IoError("error reading concept table stream");
    if (result.stats.lines > 0 &&
        result.stats.malformed * 2 > result.stats.lines) {
        throw ParseError("corrupt input: " +
                         std::to_string(result.stats.malformed) + " of " +
                         std::to_string(result.stats.lines) +
                         " lines malformed");
    }
    if (config.min_mentions > 1) {
        Lexicon filtered;
        for (const auto& [cui, rec] : result.lexicon.concepts()) {
            if (rec.mention_count() >= config.min_mentions) {
                filtered.ensure_concept(cui) = rec;
            }
        }
        result.lexicon = std::move(filtered);
    }
    result.lexicon.set_provenance(Provenance::kUmls);
    return result;
}

StyAttachStats attach_semantic_types(Lexicon& lexicon, std::istream& in) {
    StyAttachStats stats;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_pipe(line);
        if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
            ++stats.malformed;
            continue;
        }
        if (!lexicon.contains(fields[0])) {
            ++stats.unknown_cui;
            continue;
        }
        lexicon.add_semantic_type(fields[0], fields[1]);
        ++stats.attached;
    }
    if (in.bad()) throw IoError("error reading semantic-type stream");
    return stats;
}

Lexicon filter_by_semantic_types(const Lexicon& lexicon,
                                 const std::set<std::string>& sty_set) {
    Lexicon out(lexicon.provenance());
    for (const auto& [cui, rec] : lexicon.concepts()) {
        const bool keep = std::any_of(
            rec.semantic_types.begin(), rec.semantic_types.end(),
            [&](const std::string& sty) { return sty_set.count(sty) > 0; });
        if (keep) out.ensure_concept(cui) = rec;
    }
    return out;
}

Lexicon merge_lexicons(const Lexicon& a, const Lexicon& b) {
    Lexicon out = a;
    for (const auto& [cui, rec] : b.concepts()) {
        out.ensure_concept(cui);
        for (const std::string& sty : rec.semantic_types) {
            out.add_semantic_type(cui, sty);
        }
        for (const auto& [language, list] : rec.mentions) {
            for (const Mention& m : list) out.add_mention(cui, m);
        }
    }
    // canonical mention order makes the merge independent of shard order
    out.sort_mentions_canonically();
    if (a.provenance() == Provenance::kWumls ||
        b.provenance() == Provenance::kWumls) {
        out.set_provenance(Provenance::kWumls);
    }
    return out;
}

} // namespace medlex
