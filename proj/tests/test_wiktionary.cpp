#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "medlex/unicode.hpp"
#include "medlex/wiktionary.hpp"

using namespace medlex;

namespace {

std::string dump_path() {
    return std::string(MEDLEX_FIXTURES_DIR) + "/wiktionary/dump.xml";
}

std::vector<WiktionaryEntry> fixture_entries(DumpStats* stats = nullptr) {
    std::ifstream in(dump_path(), std::ios::binary);
    REQUIRE(in);
    return parse_dump(in, stats);
}

const WiktionaryEntry* find_entry(const std::vector<WiktionaryEntry>& entries,
                                  std::string_view headword) {
    for (const auto& e : entries) {
        if (e.headword == headword) return &e;
    }
    return nullptr;
}

std::string wrap_page(const std::string& title, const std::string& text) {
    std::string escaped;
    for (char c : text) {
        if (c == '<') escaped += "&lt;";
        else if (c == '&') escaped += "&amp;";
        else escaped.push_back(c);
    }
    return "<mediawiki>\n<page>\n<title>" + title + "</title>\n<ns>0</ns>\n"
           "<revision><text xml:space=\"preserve\">" + escaped +
           "</text></revision>\n</page>\n</mediawiki>\n";
}

} // namespace

TEST_CASE("a page with a synonyms block yields the split synonym list") {
    const std::string text =
        "== Diabetes ({{Sprache|Deutsch}}) ==\n"
        "{{Bedeutungen}}\n"
        ":[1] {{K|Medizin}} Stoffwechselerkrankung mit erhöhtem [[Blutzucker]]\n"
        "\n"
        "{{Synonyme}}\n"
        ":[1] [[Zuckerkrankheit]]; [[Zucker]]\n";
    std::istringstream in(wrap_page("Diabetes", text));
    const auto entries = parse_dump(in);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].headword == "Diabetes");
    CHECK(entries[0].synonyms ==
          std::vector<std::string>{"Zuckerkrankheit", "Zucker"});
    CHECK(entries[0].definition ==
          "Stoffwechselerkrankung mit erhöhtem Blutzucker");
    CHECK(entries[0].categories.count("Medizin") == 1);
}

TEST_CASE("fixture dump: known synonym rows") {
    const auto entries = fixture_entries();
    const auto* delirium = find_entry(entries, "Delirium tremens");
    REQUIRE(delirium != nullptr);
    CHECK(std::count(delirium->synonyms.begin(), delirium->synonyms.end(),
                     "Alkoholdelir") == 1);
    CHECK(std::count(delirium->synonyms.begin(), delirium->synonyms.end(),
                     "Säuferwahn") == 1);
    CHECK(delirium->synonyms.size() == 4);

    // qualifier templates are stripped, colloquial synonyms kept
    const auto* diarrhoe = find_entry(entries, "Diarrhoe");
    REQUIRE(diarrhoe != nullptr);
    CHECK(diarrhoe->synonyms ==
          std::vector<std::string>{"Schnelle Katharina", "Flotter Otto",
                                   "Durchfall"});

    // no synonyms block -> empty list
    const auto* niere = find_entry(entries, "Niere");
    REQUIRE(niere != nullptr);
    CHECK(niere->synonyms.empty());

    // synonym equal to the headword is dropped
    const auto* grippe = find_entry(entries, "Grippe");
    REQUIRE(grippe != nullptr);
    CHECK(grippe->synonyms == std::vector<std::string>{"Influenza"});
}

TEST_CASE("fixture dump: multi-sense pages pick the medical gloss") {
    const auto entries = fixture_entries();
    const auto* stuhl = find_entry(entries, "Stuhl");
    REQUIRE(stuhl != nullptr);
    CHECK(stuhl->definition == "Ausscheidung des Darmes");

    const auto* star = find_entry(entries, "Star");
    REQUIRE(star != nullptr);
    CHECK(star->definition == "Trübung oder Erkrankung des Auges");

    // entity decoding inside page text
    const auto* brot = find_entry(entries, "Brot");
    REQUIRE(brot != nullptr);
    CHECK(brot->definition == "Grundnahrungsmittel, mit Salz & Mehl gebacken");

    // category links count as categories
    const auto* musizierknochen = find_entry(entries, "Musizierknochen");
    REQUIRE(musizierknochen != nullptr);
    CHECK(musizierknochen->categories.count("Anatomie") == 1);
}

TEST_CASE("fixture dump: page and entry counts match the hand tally") {
    DumpStats stats;
    const auto entries = fixture_entries(&stats);
    CHECK(stats.pages == 50);
    CHECK(stats.entries == 46);
    CHECK(entries.size() == 46);
    CHECK(stats.skipped_no_german == 1);   // the English-only page
    CHECK(stats.skipped_namespace == 1);   // the project page
    CHECK(stats.skipped_redirect == 1);
    CHECK(stats.skipped_unparseable == 1); // broken template

    std::size_t with_synonyms = 0;
    std::size_t synonym_strings = 0;
    for (const auto& e : entries) {
        if (!e.synonyms.empty()) ++with_synonyms;
        synonym_strings += e.synonyms.size();
    }
    CHECK(with_synonyms == 24);
    CHECK(synonym_strings == 39);
    CHECK(entries.size() + synonym_strings == 85); // total mention strings
}

TEST_CASE("filter_medical keeps categories and pattern matches") {
    const auto entries = fixture_entries();
    const auto medical = filter_medical(entries);
    CHECK(medical.size() == 29);

    CHECK(find_entry(medical, "Magen") != nullptr); // category "Anatomy"
    CHECK(find_entry(medical, "Seekrankheit") != nullptr); // pattern only
    CHECK(find_entry(medical, "Krankenhaus") != nullptr);  // pattern only
    CHECK(find_entry(medical, "Tisch") == nullptr);
    CHECK(find_entry(medical, "Stern") == nullptr);

    // subset of the input, and applying the filter twice changes nothing
    CHECK(medical.size() <= entries.size());
    const auto twice = filter_medical(medical);
    CHECK(twice.size() == medical.size());
}

TEST_CASE("parser is single-pass with bounded buffering") {
    // many copies of one page, streamed without materializing the dump
    const std::string page = wrap_page(
        "Fieber", "== Fieber ({{Sprache|Deutsch}}) ==\n{{Bedeutungen}}\n"
                  ":[1] {{K|Medizin}} erhöhte Körpertemperatur\n");
    const std::string body = page.substr(page.find("<page>"));
    const std::string one_page = body.substr(0, body.find("</page>") + 7);

    std::string big;
    big.reserve(one_page.size() * 2000 + 64);
    big += "<mediawiki>\n";
    for (int i = 0; i < 2000; ++i) big += one_page;
    big += "</mediawiki>\n";

    std::istringstream in(big);
    DumpStats stats;
    const auto entries = parse_dump(in, &stats);
    CHECK(entries.size() == 2000);
    CHECK(stats.peak_buffer_bytes < 128 * 1024);
    CHECK(big.size() > 4 * stats.peak_buffer_bytes);
}

TEST_CASE("malformed XML reports a byte offset") {
    std::istringstream in("<mediawiki><page><title>x</title>");
    try {
        parse_dump(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("byte offset") != std::string::npos);
    }
}

TEST_CASE("entries survive the JSON-lines round trip") {
    const auto medical = filter_medical(fixture_entries());
    std::ostringstream out;
    write_entries_jsonl(medical, out);
    std::istringstream in(out.str());
    const auto reread = read_entries_jsonl(in);
    REQUIRE(reread.size() == medical.size());
    for (std::size_t i = 0; i < medical.size(); ++i) {
        CHECK(reread[i].headword == medical[i].headword);
        CHECK(reread[i].definition == medical[i].definition);
        CHECK(reread[i].synonyms == medical[i].synonyms);
        CHECK(reread[i].categories == medical[i].categories);
    }

    std::istringstream bad("{\"definition\":\"x\"}\n");
    CHECK_THROWS_AS(read_entries_jsonl(bad), ParseError);
    std::istringstream garbage("not json\n");
    CHECK_THROWS_AS(read_entries_jsonl(garbage), ParseError);
}
