#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "medlex/lexicon.hpp"

using namespace medlex;

TEST_CASE("make_mention normalizes the surface") {
    const Mention m = make_mention("  Karzinom ", lang::ger(), Source::kUmls);
    CHECK(m.surface == "Karzinom");
    CHECK(m.folded == "karzinom");
    CHECK(m.stem == "karzinom");

    const Mention decomposed =
        make_mention("Neurasthénie", lang::fre(), Source::kUmls);
    CHECK(decomposed.surface == "Neurasthénie");
    CHECK(decomposed.stem.empty()); // non-German carries no stem

    CHECK_THROWS_AS(make_mention("   ", lang::ger(), Source::kUmls),
                    ValidationError);
    CHECK_THROWS_AS(make_mention("a\tb", lang::ger(), Source::kUmls),
                    ValidationError);
}

TEST_CASE("language codes are validated") {
    CHECK(LanguageCode::from_string("GER").str() == "GER");
    CHECK_THROWS_AS(LanguageCode::from_string("ger"), ValidationError);
    CHECK_THROWS_AS(LanguageCode::from_string("GERM"), ValidationError);
    CHECK_THROWS_AS(LanguageCode::from_string("G1R"), ValidationError);
}

TEST_CASE("add_mention extends a concept and skips duplicates") {
    Lexicon lexicon;
    lexicon.ensure_concept("C-D");
    CHECK(lexicon.add_mention("C-D",
                              make_mention("Diabetes", lang::ger(), Source::kUmls)));
    CHECK(lexicon.add_mention(
        "C-D", make_mention("Zucker", lang::ger(), Source::kWiktionary)));
    CHECK(lexicon.find("C-D")->mentions_for(lang::ger())->size() == 2);

    // adding the same mention twice is a no-op
    CHECK_FALSE(lexicon.add_mention(
        "C-D", make_mention("Zucker", lang::ger(), Source::kWiktionary)));
    CHECK(lexicon.find("C-D")->mentions_for(lang::ger())->size() == 2);

    // duplicates are keyed on the folded form
    CHECK_FALSE(lexicon.add_mention(
        "C-D", make_mention("diabetes", lang::ger(), Source::kUmls)));

    // same folded form from another source is a distinct mention
    CHECK(lexicon.add_mention(
        "C-D", make_mention("Diabetes", lang::ger(), Source::kWiktionary)));

    CHECK_THROWS_AS(
        lexicon.add_mention("C-X",
                            make_mention("x", lang::ger(), Source::kUmls)),
        UnknownCuiError);
}

TEST_CASE("mention lists never hold (language, folded, source) duplicates") {
    const std::vector<std::string> pool = {"Zucker",  "zucker", "Diabetes",
                                           "DIABETES", "Fieber", "fieber "};
    std::mt19937_64 gen(3);
    Lexicon lexicon;
    lexicon.ensure_concept("C1");
    for (int i = 0; i < 200; ++i) {
        const auto& surface = pool[gen() % pool.size()];
        const Source source = gen() % 2 == 0 ? Source::kUmls : Source::kWiktionary;
        lexicon.add_mention("C1", make_mention(surface, lang::ger(), source));
    }
    const auto* german = lexicon.find("C1")->mentions_for(lang::ger());
    std::set<std::pair<std::string, int>> keys;
    for (const Mention& m : *german) {
        CHECK(keys.insert({m.folded, static_cast<int>(m.source)}).second);
    }
}

TEST_CASE("wiktionary CUIs are stable and prefixed") {
    const std::string a = wiktionary_cui("dialyse");
    CHECK(a.substr(0, 4) == "WIK:");
    CHECK(a == wiktionary_cui("dialyse"));
    CHECK(a != wiktionary_cui("dialysen"));
    CHECK(a.size() == 20);
}

TEST_CASE("snapshot round-trips canonical files byte for byte") {
    Lexicon lexicon;
    lexicon.ensure_concept("C0007097");
    lexicon.add_mention("C0007097",
                        make_mention("Karzinom", lang::ger(), Source::kUmls));
    lexicon.add_mention("C0007097",
                        make_mention("carcinoma", lang::eng(), Source::kUmls));
    lexicon.ensure_concept("C0024031");
    lexicon.add_mention("C0024031",
                        make_mention("Lumbago", lang::ger(), Source::kUmls));
    lexicon.add_mention(
        "C0024031", make_mention("Hexenschuss", lang::ger(), Source::kWiktionary));
    lexicon.add_semantic_type("C0024031", "Sign or Symptom");

    std::ostringstream first;
    write_snapshot(lexicon, first);
    std::istringstream again(first.str());
    const Lexicon reread = read_snapshot(again);
    std::ostringstream second;
    write_snapshot(reread, second);
    CHECK(first.str() == second.str());
    CHECK(reread.provenance() == Provenance::kWumls); // wiktionary mention seen

    std::ostringstream sty_first;
    write_semantic_types(lexicon, sty_first);
    CHECK(sty_first.str() == "C0024031\tSign or Symptom\n");
}

TEST_CASE("snapshot reader rejects bad lines") {
    std::istringstream bad("C1\tGER\tUMLS");
    CHECK_THROWS_AS(read_snapshot(bad), ParseError);
    std::istringstream bad_source("C1\tGER\tSOLR\tx\n");
    CHECK_THROWS_AS(read_snapshot(bad_source), ValidationError);
}
