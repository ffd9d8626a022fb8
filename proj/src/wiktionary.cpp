#include "medlex/wiktionary.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "medlex/unicode.hpp"
#include "medlex/wikitext.hpp"

namespace medlex {

const std::set<std::string>& default_medical_categories() {
    static const std::set<std::string> kCategories = {
        "Medicine",      "Medizin",
        "Pharmacy",      "Pharmazie",
        "Pharmacology",  "Pharmakologie",
        "Anatomy",       "Anatomie",
        "Psychiatry",    "Psychiatrie",
        "Psychology",    "Psychologie",
        "Physiology",    "Physiologie",
        "Ophthalmology", "Ophthalmologie",
        "Pathology",     "Pathologie",
        "Dentistry",     "Zahnmedizin",
        "Gynaecology",   "Gynäkologie",
        "Dermatology",   "Dermatologie",
    };
    return kCategories;
}

namespace {

std::string decode_entities(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != '&') {
            out.push_back(s[i]);
            ++i;
            continue;
        }
        const auto semi = s.find(';', i + 1);
        if (semi == std::string_view::npos || semi - i > 12) {
            out.push_back('&');
            ++i;
            continue;
        }
        const std::string_view name = s.substr(i + 1, semi - i - 1);
        if (name == "lt") out.push_back('<');
        else if (name == "gt") out.push_back('>');
        else if (name == "amp") out.push_back('&');
        else if (name == "quot") out.push_back('"');
        else if (name == "apos") out.push_back('\'');
        else if (!name.empty() && name[0] == '#') {
            char32_t cp = 0;
            bool ok = name.size() > 1;
            if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
                for (std::size_t k = 2; k < name.size() && ok; ++k) {
                    const char c = name[k];
                    cp <<= 4;
                    if (c >= '0' && c <= '9') cp |= static_cast<char32_t>(c - '0');
                    else if (c >= 'a' && c <= 'f') cp |= static_cast<char32_t>(c - 'a' + 10);
                    else if (c >= 'A' && c <= 'F') cp |= static_cast<char32_t>(c - 'A' + 10);
                    else ok = false;
                }
            } else {
                for (std::size_t k = 1; k < name.size() && ok; ++k) {
                    const char c = name[k];
                    if (c < '0' || c > '9') { ok = false; break; }
                    cp = cp * 10 + static_cast<char32_t>(c - '0');
                }
            }
            if (ok && cp > 0 && cp <= 0x10FFFF) {
                out += utf8_encode(std::u32string(1, cp));
            } else {
                out.append(s.substr(i, semi - i + 1));
            }
        } else {
            out.append(s.substr(i, semi - i + 1));
        }
        i = semi + 1;
    }
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string_view line = text.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back(line);
            start = i + 1;
        }
    }
    return lines;
}

bool is_heading(std::string_view line) {
    const auto t = trim(line);
    return t.size() > 4 && t.substr(0, 3) == "== " && t.substr(t.size() - 3) == " ==";
}

// drops a leading ":" and "[n]" sense marker
std::string_view strip_sense_marker(std::string_view line) {
    std::string_view rest = trim(line);
    while (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
    rest = trim(rest);
    if (!rest.empty() && rest.front() == '[' && rest.compare(0, 2, "[[") != 0) {
        if (const auto close = rest.find(']'); close != std::string_view::npos) {
            rest.remove_prefix(close + 1);
        }
    }
    return trim(rest);
}

struct Section {
    std::string text;
};

/// German language section of a page, or nullopt.
std::optional<Section> german_section(std::string_view wikitext) {
    const auto lines = split_lines(wikitext);
    std::size_t begin = lines.size();
    std::size_t end = lines.size();
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (!is_heading(lines[i])) continue;
        if (begin == lines.size()) {
            if (lines[i].find("{{Sprache|Deutsch}}") != std::string_view::npos) {
                begin = i + 1;
            }
        } else {
            end = i;
            break;
        }
    }
    if (begin == lines.size()) return std::nullopt;
    std::string text;
    for (std::size_t i = begin; i < end; ++i) {
        text += lines[i];
        text += '\n';
    }
    return Section{std::move(text)};
}

/// Lines of the block opened by a `{{Name}}` marker line: the following
/// ':'-prefixed lines, up to the first blank or non-list line.
std::vector<std::string_view> block_lines(
    const std::vector<std::string_view>& lines, std::string_view marker) {
    std::vector<std::string_view> out;
    bool in_block = false;
    for (const auto& line : lines) {
        const auto t = trim(line);
        if (!in_block) {
            if (t == marker) in_block = true;
            continue;
        }
        if (t.empty() || t.front() != ':') break;
        out.push_back(t);
    }
    return out;
}

WiktionaryEntry build_entry(std::string headword, Section section) {
    WiktionaryEntry entry;
    entry.headword = nfc(trim(headword));
    const auto lines = split_lines(section.text);

    // categories: context templates plus category links
    for (auto& arg : template_args(section.text, "K")) {
        entry.categories.insert(std::move(arg));
    }
    static constexpr std::string_view kCategoryLink = "[[Kategorie:";
    std::size_t pos = 0;
    while ((pos = section.text.find(kCategoryLink, pos)) != std::string::npos) {
        const auto end = section.text.find("]]", pos);
        if (end == std::string::npos) throw WikitextError("unterminated category link");
        std::string_view label(section.text.data() + pos + kCategoryLink.size(),
                               end - pos - kCategoryLink.size());
        if (const auto pipe = label.find('|'); pipe != std::string_view::npos) {
            label = label.substr(0, pipe);
        }
        if (!trim(label).empty()) entry.categories.emplace(trim(label));
        pos = end + 2;
    }

    // definition: prefer the first medical-sense gloss
    const auto glosses = block_lines(lines, "{{Bedeutungen}}");
    std::string_view chosen;
    for (const auto& gloss : glosses) {
        const auto args = template_args(gloss, "K");
        const bool medical = std::any_of(
            args.begin(), args.end(), [](const std::string& a) {
                return default_medical_categories().count(a) > 0;
            });
        if (medical) {
            chosen = gloss;
            break;
        }
    }
    if (chosen.empty() && !glosses.empty()) chosen = glosses.front();
    if (!chosen.empty()) {
        entry.definition = strip_wikitext(strip_sense_marker(chosen));
    }

    // synonyms
    const std::string folded_headword = case_fold(entry.headword);
    std::set<std::string> seen;
    for (const auto& line : block_lines(lines, "{{Synonyme}}")) {
        for (auto& synonym : split_synonym_line(line)) {
            const std::string normalized = nfc(trim(synonym));
            if (normalized.empty()) continue;
            const std::string folded = case_fold(normalized);
            if (folded == folded_headword) continue;
            if (!seen.insert(folded).second) continue;
            entry.synonyms.push_back(normalized);
        }
    }

    entry.section_text = std::move(section.text);
    return entry;
}

constexpr std::size_t kChunk = 64 * 1024;

} // namespace

struct DumpParser::Impl {
    std::istream& in;
    std::string buf;
    std::size_t buf_offset = 0; // byte offset of buf[0] in the stream
    bool eof = false;
    DumpStats stats;

    explicit Impl(std::istream& stream) : in(stream) {}

    void note_peak() {
        stats.peak_buffer_bytes = std::max(stats.peak_buffer_bytes, buf.size());
    }

    bool refill() {
        if (eof) return false;
        char chunk[kChunk];
        in.read(chunk, sizeof chunk);
        const auto got = static_cast<std::size_t>(in.gcount());
        if (got == 0) {
            if (in.bad()) throw IoError("error reading dump stream");
            eof = true;
            return false;
        }
        buf.append(chunk, got);
        note_peak();
        return true;
    }

    void consume(std::size_t n) {
        buf.erase(0, n);
        buf_offset += n;
    }

    // next raw <page>...</page> slice, or nullopt at end of dump
    std::optional<std::string> next_page() {
        for (;;) {
            const auto start = buf.find("<page>");
            if (start == std::string::npos) {
                // keep a tail that could hold a split-up "<page>"
                if (buf.size() > 8) consume(buf.size() - 8);
                if (!refill()) return std::nullopt;
                continue;
            }
            std::size_t search_from = start;
            for (;;) {
                const auto end = buf.find("</page>", search_from);
                if (end != std::string::npos) {
                    std::string page = buf.substr(start, end + 7 - start);
                    consume(end + 7);
                    return page;
                }
                search_from = buf.size() > start + 7 ? buf.size() - 7 : start;
                if (!refill()) {
                    throw ParseError(
                        "malformed XML: unterminated <page> element at byte offset " +
                        std::to_string(buf_offset + start));
                }
            }
        }
    }

    // inner text of the first <tag ...>...</tag>; nullopt when absent
    std::optional<std::string> element_text(std::string_view page,
                                            std::string_view tag,
                                            std::size_t page_offset) const {
        const std::string open = "<" + std::string(tag);
        auto pos = page.find(open);
        while (pos != std::string_view::npos) {
            const char after = pos + open.size() < page.size()
                                   ? page[pos + open.size()]
                                   : '\0';
            if (after == '>' || after == ' ' || after == '/') break;
            pos = page.find(open, pos + 1);
        }
        if (pos == std::string_view::npos) return std::nullopt;
        const auto close_bracket = page.find('>', pos);
        if (close_bracket == std::string_view::npos) {
            throw ParseError("malformed XML: unterminated <" + std::string(tag) +
                             "> at byte offset " + std::to_string(page_offset + pos));
        }
        if (page[close_bracket - 1] == '/') return std::string(); // self-closing
        const std::string close = "</" + std::string(tag) + ">";
        const auto end = page.find(close, close_bracket + 1);
        if (end == std::string_view::npos) {
            throw ParseError("malformed XML: missing " + close + " at byte offset " +
                             std::to_string(page_offset + pos));
        }
        return decode_entities(
            page.substr(close_bracket + 1, end - close_bracket - 1));
    }
};

DumpParser::DumpParser(std::istream& in) : impl_(std::make_unique<Impl>(in)) {}
DumpParser::~DumpParser() = default;

const DumpStats& DumpParser::stats() const { return impl_->stats; }

std::optional<WiktionaryEntry> DumpParser::next() {
    for (;;) {
        const std::size_t page_offset = impl_->buf_offset;
        auto page = impl_->next_page();
        if (!page) return std::nullopt;
        ++impl_->stats.pages;

        if (page->find("<redirect") != std::string::npos) {
            ++impl_->stats.skipped_redirect;
            continue;
        }
        const auto ns = impl_->element_text(*page, "ns", page_offset);
        if (ns && trim(*ns) != "0" && !trim(*ns).empty()) {
            ++impl_->stats.skipped_namespace;
            continue;
        }
        const auto title = impl_->element_text(*page, "title", page_offset);
        if (!title || trim(*title).empty()) {
            throw ParseError("malformed XML: page without <title> at byte offset " +
                             std::to_string(page_offset));
        }
        const auto text = impl_->element_text(*page, "text", page_offset);
        if (!text) {
            ++impl_->stats.skipped_no_german;
            continue;
        }
        auto section = german_section(*text);
        if (!section) {
            ++impl_->stats.skipped_no_german;
            continue;
        }
        try {
            WiktionaryEntry entry = build_entry(*title, std::move(*section));
            ++impl_->stats.entries;
            return entry;
        } catch (const WikitextError&) {
            ++impl_->stats.skipped_unparseable;
            continue;
        }
    }
}

std::vector<WiktionaryEntry> parse_dump(std::istream& in, DumpStats* stats) {
    DumpParser parser(in);
    std::vector<WiktionaryEntry> entries;
    while (auto entry = parser.next()) {
        entries.push_back(std::move(*entry));
    }
    if (stats != nullptr) *stats = parser.stats();
    return entries;
}

std::vector<WiktionaryEntry> filter_medical(
    const std::vector<WiktionaryEntry>& entries,
    const std::set<std::string>& categories,
    std::string_view pattern) {
    const std::string folded_pattern = case_fold(pattern);
    std::vector<WiktionaryEntry> out;
    for (const auto& entry : entries) {
        const bool by_category = std::any_of(
            entry.categories.begin(), entry.categories.end(),
            [&](const std::string& c) { return categories.count(c) > 0; });
        bool keep = by_category;
        if (!keep && !folded_pattern.empty()) {
            // the headword is part of the entry text; entries loaded from
            // JSON-lines carry no section text, so fall back to the
            // serialized fields
            std::string haystack = entry.headword;
            haystack += '\n';
            if (!entry.section_text.empty()) {
                haystack += entry.section_text;
            } else {
                haystack += entry.definition;
                for (const auto& s : entry.synonyms) {
                    haystack += '\n';
                    haystack += s;
                }
            }
            keep = case_fold(haystack).find(folded_pattern) != std::string::npos;
        }
        if (keep) out.push_back(entry);
    }
    return out;
}

void write_entries_jsonl(const std::vector<WiktionaryEntry>& entries,
                         std::ostream& out) {
    for (const auto& entry : entries) {
        nlohmann::json j;
        j["headword"] = entry.headword;
        j["definition"] = entry.definition;
        j["synonyms"] = entry.synonyms;
        j["categories"] = entry.categories;
        out << j.dump() << '\n';
    }
}

std::vector<WiktionaryEntry> read_entries_jsonl(std::istream& in) {
    std::vector<WiktionaryEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("entries line " + std::to_string(lineno) + ": " +
                             e.what());
        }
        WiktionaryEntry entry;
        entry.headword = j.value("headword", "");
        entry.definition = j.value("definition", "");
        for (const auto& s : j.value("synonyms", nlohmann::json::array())) {
            entry.synonyms.push_back(s.get<std::string>());
        }
        for (const auto& c : j.value("categories", nlohmann::json::array())) {
            entry.categories.insert(c.get<std::string>());
        }
        if (entry.headword.empty()) {
            throw ParseError("entries line " + std::to_string(lineno) +
                             ": missing headword");
        }
        entries.push_back(std::move(entry));
    }
    if (in.bad()) throw IoError("error reading entries stream");
    return entries;
}

} // namespace medlex
