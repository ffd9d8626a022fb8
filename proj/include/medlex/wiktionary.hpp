#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "medlex/errors.hpp"

namespace medlex {

struct WiktionaryEntry {
    std::string headword;
    std::string definition; // first sense gloss, markup stripped
    std::vector<std::string> synonyms; // deduplicated, headword excluded
    std::set<std::string> categories;
    /// Raw wikitext of the German section; used by the pattern filter,
    /// not serialized.
    std::string section_text;
};

/// Category labels of the medical subset. Pages are tagged in German on
/// de.wiktionary while the literature lists the English names, so both
/// spellings are accepted.
const std::set<std::string>& default_medical_categories();

struct DumpStats {
    std::size_t pages = 0;
    std::size_t entries = 0;
    std::size_t skipped_no_german = 0;   // no German language section
    std::size_t skipped_namespace = 0;   // ns != 0
    std::size_t skipped_redirect = 0;
    std::size_t skipped_unparseable = 0; // broken wikitext
    std::size_t peak_buffer_bytes = 0;   // streaming bound witness
};

/// Streaming pull parser over a MediaWiki XML dump. Reads one <page>
/// element at a time, so peak memory depends on the largest page, not
/// on the dump size. Malformed XML raises ParseError with the byte
/// offset of the offending construct.
class DumpParser {
public:
    explicit DumpParser(std::istream& in);
    ~DumpParser();
    DumpParser(const DumpParser&) = delete;
    DumpParser& operator=(const DumpParser&) = delete;

    /// Next entry, or nullopt at end of dump.
    std::optional<WiktionaryEntry> next();

    const DumpStats& stats() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Parses the whole dump into memory.
std::vector<WiktionaryEntry> parse_dump(std::istream& in,
                                        DumpStats* stats = nullptr);

/// Keeps an entry iff its categories intersect `categories` or its raw
/// section text contains `pattern` (case-insensitive substring).
std::vector<WiktionaryEntry> filter_medical(
    const std::vector<WiktionaryEntry>& entries,
    const std::set<std::string>& categories = default_medical_categories(),
    std::string_view pattern = "krank");

// JSON-lines serialization: one object per entry with fields
// headword/definition/synonyms/categories.
void write_entries_jsonl(const std::vector<WiktionaryEntry>& entries,
                         std::ostream& out);
std::vector<WiktionaryEntry> read_entries_jsonl(std::istream& in);

} // namespace medlex
