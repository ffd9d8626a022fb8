#include "medlex/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <tuple>
#include <istream>
#include <ostream>
#include <sstream>

#include "medlex/stemmer.hpp"
#include "medlex/unicode.hpp"

namespace medlex {

LanguageCode LanguageCode::from_string(std::string_view s) {
    if (s.size() != 3) {
        throw ValidationError("language code must have exactly 3 letters: '" +
                              std::string(s) + "'");
    }
    LanguageCode lc;
    for (int i = 0; i < 3; ++i) {
        const char c = s[i];
        if (c < 'A' || c > 'Z') {
            throw ValidationError("language code must be uppercase ASCII: '" +
                                  std::string(s) + "'");
        }
        lc.code_[static_cast<std::size_t>(i)] = c;
    }
    return lc;
}

namespace lang {
LanguageCode ger() { return LanguageCode::from_string("GER"); }
LanguageCode eng() { return LanguageCode::from_string("ENG"); }
LanguageCode fre() { return LanguageCode::from_string("FRE"); }
} // namespace lang

std::string to_string(Source s) {
    return s == Source::kUmls ? "UMLS" : "WIKTIONARY";
}

Source source_from_string(std::string_view s) {
    if (s == "UMLS") return Source::kUmls;
    if (s == "WIKTIONARY") return Source::kWiktionary;
    throw ValidationError("unknown mention source: '" + std::string(s) + "'");
}

Mention make_mention(std::string_view surface, LanguageCode language, Source source) {
    const std::string normalized = nfc(trim(surface));
    if (normalized.empty()) {
        throw ValidationError("mention surface is empty after trimming");
    }
    if (normalized.find('\t') != std::string::npos ||
        normalized.find('\n') != std::string::npos ||
        normalized.find('\r') != std::string::npos) {
        throw ValidationError("mention surface contains tab or newline: '" +
                              normalized + "'");
    }
    Mention m;
    m.surface = normalized;
    m.language = language;
    m.source = source;
    m.folded = case_fold(normalized);
    if (language == lang::ger()) m.stem = german_stem(m.folded);
    return m;
}

const std::vector<Mention>* Concept::mentions_for(LanguageCode lang) const {
    auto it = mentions.find(lang);
    return it == mentions.end() ? nullptr : &it->second;
}

bool Concept::has_german_folded(std::string_view folded) const {
    const auto* german = mentions_for(lang::ger());
    if (german == nullptr) return false;
    return std::any_of(german->begin(), german->end(),
                       [&](const Mention& m) { return m.folded == folded; });
}

std::size_t Concept::mention_count() const {
    std::size_t n = 0;
    for (const auto& [_, list] : mentions) n += list.size();
    return n;
}

const Concept* Lexicon::find(std::string_view cui) const {
    auto it = concepts_.find(std::string(cui));
    return it == concepts_.end() ? nullptr : &it->second;
}

std::size_t Lexicon::mention_count() const {
    std::size_t n = 0;
    for (const auto& [_, c] : concepts_) n += c.mention_count();
    return n;
}

Concept& Lexicon::ensure_concept(std::string_view cui) {
    auto [it, inserted] = concepts_.try_emplace(std::string(cui));
    if (inserted) it->second.cui = std::string(cui);
    return it->second;
}

bool Lexicon::add_mention(std::string_view cui, Mention mention) {
    auto it = concepts_.find(std::string(cui));
    if (it == concepts_.end()) throw UnknownCuiError(std::string(cui));
    auto& list = it->second.mentions[mention.language];
    const bool duplicate = std::any_of(
        list.begin(), list.end(), [&](const Mention& m) {
            return m.folded == mention.folded && m.source == mention.source;
        });
    if (duplicate) return false;
    list.push_back(std::move(mention));
    return true;
}

void Lexicon::add_semantic_type(std::string_view cui, std::string_view sty) {
    ensure_concept(cui).semantic_types.insert(std::string(sty));
}

void Lexicon::sort_mentions_canonically() {
    for (auto& [cui, rec] : concepts_) {
        for (auto& [language, list] : rec.mentions) {
            std::sort(list.begin(), list.end(),
                      [](const Mention& x, const Mention& y) {
                          return std::tie(x.folded, x.source, x.surface) <
                                 std::tie(y.folded, y.source, y.surface);
                      });
        }
    }
}

std::string wiktionary_cui(std::string_view folded_headword) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : folded_headword) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[21];
    std::snprintf(buf, sizeof buf, "WIK:%016llx",
                  static_cast<unsigned long long>(h));
    return std::string(buf);
}

void write_snapshot(const Lexicon& lexicon, std::ostream& out) {
    for (const auto& [cui, rec] : lexicon.concepts()) {
        for (const auto& [language, list] : rec.mentions) {
            for (const Mention& m : list) {
                out << cui << '\t' << language.str() << '\t'
                    << to_string(m.source) << '\t' << m.surface << '\n';
            }
        }
    }
}

void write_semantic_types(const Lexicon& lexicon, std::ostream& out) {
    for (const auto& [cui, rec] : lexicon.concepts()) {
        for (const std::string& sty : rec.semantic_types) {
            out << cui << '\t' << sty << '\n';
        }
    }
}

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            fields.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return fields;
}

} // namespace

Lexicon read_snapshot(std::istream& in) {
    Lexicon lexicon;
    bool saw_wiktionary = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 4) {
            throw ParseError("snapshot line " + std::to_string(lineno) +
                             ": expected 4 tab-separated fields");
        }
        const Source source = source_from_string(fields[2]);
        saw_wiktionary = saw_wiktionary || source == Source::kWiktionary;
        lexicon.ensure_concept(fields[0]);
        lexicon.add_mention(fields[0],
                            make_mention(fields[3],
                                         LanguageCode::from_string(fields[1]),
                                         source));
    }
    if (in.bad()) throw IoError("error reading snapshot stream");
    lexicon.set_provenance(saw_wiktionary ? Provenance::kWumls
                                          : Provenance::kUmls);
    return lexicon;
}

void read_semantic_types(Lexicon& lexicon, std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 2) {
            throw ParseError("semantic-type line " + std::to_string(lineno) +
                             ": expected CUI<TAB>STY");
        }
        lexicon.add_semantic_type(fields[0], fields[1]);
    }
    if (in.bad()) throw IoError("error reading semantic-type stream");
}

std::filesystem::path sty_path_for(const std::filesystem::path& lexicon_path) {
    std::filesystem::path p = lexicon_path;
    p += ".sty";
    return p;
}

void save_lexicon(const Lexicon& lexicon, const std::filesystem::path& path) {
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        write_snapshot(lexicon, out);
        if (!out) throw IoError("error writing " + path.string());
    }
    {
        const auto sty = sty_path_for(path);
        std::ofstream out(sty, std::ios::binary);
        if (!out) throw IoError("cannot write " + sty.string());
        write_semantic_types(lexicon, out);
        if (!out) throw IoError("error writing " + sty.string());
    }
}

Lexicon load_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    Lexicon lexicon = read_snapshot(in);
    const auto sty = sty_path_for(path);
    if (std::filesystem::exists(sty)) {
        std::ifstream sin(sty, std::ios::binary);
        if (!sin) throw IoError("cannot read " + sty.string());
        read_semantic_types(lexicon, sin);
    }
    return lexicon;
}

} // namespace medlex
