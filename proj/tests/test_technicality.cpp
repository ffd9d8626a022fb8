#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "medlex/technicality.hpp"
#include "medlex/umls.hpp"
#include "medlex/unicode.hpp"

using namespace medlex;

namespace {

// reference implementation: full-matrix dynamic programming
std::size_t lev_oracle(const std::u32string& a, const std::u32string& b) {
    std::vector<std::vector<std::size_t>> dp(
        a.size() + 1, std::vector<std::size_t>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i) dp[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j) dp[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            dp[i][j] = std::min({dp[i - 1][j] + 1, dp[i][j - 1] + 1,
                                 dp[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
        }
    }
    return dp[a.size()][b.size()];
}

Mention ger(const std::string& s) {
    return make_mention(s, lang::ger(), Source::kUmls);
}
Mention eng(const std::string& s) {
    return make_mention(s, lang::eng(), Source::kUmls);
}
Mention fre(const std::string& s) {
    return make_mention(s, lang::fre(), Source::kUmls);
}

Lexicon fixture_lexicon() {
    IngestConfig config;
    config.columns = parse_columns_spec("cui=0,lang=1,str=2,suppress=3");
    std::ifstream in(std::string(MEDLEX_FIXTURES_DIR) + "/umls/concepts.psv",
                     std::ios::binary);
    REQUIRE(in);
    Lexicon lexicon = parse_concept_table(in, config).lexicon;
    std::ifstream sty(std::string(MEDLEX_FIXTURES_DIR) + "/umls/semantic_types.psv",
                      std::ios::binary);
    REQUIRE(sty);
    attach_semantic_types(lexicon, sty);
    return lexicon;
}

std::vector<std::string> ranked_surfaces(const SortedSynonymEntry& entry) {
    std::vector<std::string> out;
    for (const auto& s : entry.ranked) out.push_back(s.mention.surface);
    return out;
}

} // namespace

TEST_CASE("levenshtein basics") {
    CHECK(levenshtein_utf8("abc", "abc") == 0);
    CHECK(levenshtein_utf8("kitten", "sitting") == 3);
    CHECK(levenshtein_utf8("karzinom", "carcinoma") == 3);
    CHECK(levenshtein_utf8("", "ninja") == 5);
    CHECK(levenshtein_utf8("ninja", "") == 5);
    CHECK(levenshtein_utf8("", "") == 0);
    // umlauts are single scalar values
    CHECK(levenshtein_utf8("grün", "grun") == 1);
}

TEST_CASE("levenshtein agrees with the DP oracle on random pairs") {
    const std::u32string alphabet = U"abcdefghäöüß ";
    std::mt19937_64 gen(17);
    for (int i = 0; i < 300; ++i) {
        std::u32string a, b;
        for (std::size_t k = gen() % 16; k > 0; --k) a.push_back(alphabet[gen() % alphabet.size()]);
        for (std::size_t k = gen() % 16; k > 0; --k) b.push_back(alphabet[gen() % alphabet.size()]);
        const std::size_t d = levenshtein(a, b);
        CHECK(d == lev_oracle(a, b));
        CHECK(d == levenshtein(b, a));
    }
}

TEST_CASE("harmonized distance reproduces the worked example") {
    const auto scored =
        harmonized_distance(ger("Karzinom"), {eng("carcinoma")}, {fre("carcinome")});
    CHECK(scored.defined);
    CHECK(scored.h_dist == doctest::Approx(37.5).epsilon(1e-12));

    const auto raw = harmonized_distance(ger("Karzinom"), {eng("carcinoma")},
                                         {fre("carcinome")}, ScoreScale::kRaw);
    CHECK(raw.h_dist == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("harmonized distance degenerate cases") {
    // target equal to a reference in both languages scores zero
    const auto zero =
        harmonized_distance(ger("Lumbago"), {eng("lumbago")}, {fre("lumbago")});
    CHECK(zero.defined);
    CHECK(zero.h_dist == 0.0);

    // no references at all: undefined
    const auto undefined = harmonized_distance(ger("Blutwäsche"), {}, {});
    CHECK_FALSE(undefined.defined);

    // one reference language missing: divide by len, not 2*len
    const auto single =
        harmonized_distance(ger("Proteinurie"), {eng("proteinuria")}, {});
    CHECK(single.defined);
    CHECK(single.h_dist ==
          doctest::Approx(2.0 / 11.0 * 100.0).epsilon(1e-12));

    CHECK_THROWS_AS(harmonized_distance(eng("pain"), {}, {}), ValidationError);
}

TEST_CASE("harmonized distance properties") {
    std::mt19937_64 gen(23);
    const std::u32string alphabet = U"abcdefghäöü";
    auto random_word = [&](std::size_t max_len) {
        std::u32string s;
        for (std::size_t k = 1 + gen() % max_len; k > 0; --k) {
            s.push_back(alphabet[gen() % alphabet.size()]);
        }
        return utf8_encode(s);
    };
    for (int i = 0; i < 100; ++i) {
        const Mention target = ger(random_word(10));
        std::vector<Mention> en, fr;
        for (std::size_t k = 1 + gen() % 4; k > 0; --k) en.push_back(eng(random_word(10)));
        for (std::size_t k = 1 + gen() % 4; k > 0; --k) fr.push_back(fre(random_word(10)));

        const auto base = harmonized_distance(target, en, fr);

        // permutation invariance
        std::vector<Mention> en_shuffled = en, fr_shuffled = fr;
        std::shuffle(en_shuffled.begin(), en_shuffled.end(), gen);
        std::shuffle(fr_shuffled.begin(), fr_shuffled.end(), gen);
        CHECK(harmonized_distance(target, en_shuffled, fr_shuffled).h_dist ==
              base.h_dist);

        // adding a reference can never increase the score
        std::vector<Mention> en_more = en;
        en_more.push_back(eng(random_word(10)));
        CHECK(harmonized_distance(target, en_more, fr).h_dist <=
              base.h_dist + 1e-12);
    }
}

TEST_CASE("sort_synonyms ranks lowest score first") {
    Concept rec;
    rec.cui = "C0024031";
    rec.mentions[lang::ger()] = {ger("Lumbago"), ger("Hexenschuss")};
    rec.mentions[lang::eng()] = {eng("lumbago")};
    rec.mentions[lang::fre()] = {fre("lumbago")};
    const auto entry = sort_synonyms(rec);
    REQUIRE(entry.ranked.size() == 2);
    CHECK(entry.ranked[0].mention.surface == "Lumbago");
    CHECK(entry.ranked[0].h_dist == 0.0);
    CHECK(entry.ranked[1].mention.surface == "Hexenschuss");
    CHECK(entry.ranked[1].h_dist > 0.0);

    // rerun yields the identical order
    CHECK(ranked_surfaces(sort_synonyms(rec)) == ranked_surfaces(entry));
}

TEST_CASE("sort_synonyms edge cases") {
    Concept single;
    single.cui = "C1";
    single.mentions[lang::ger()] = {ger("Fieber")};
    single.mentions[lang::eng()] = {eng("fever")};
    CHECK(sort_synonyms(single).ranked.size() == 1);

    // equal scores break ties by folded form
    Concept tie;
    tie.cui = "C2";
    tie.mentions[lang::ger()] = {ger("aby"), ger("abx")};
    tie.mentions[lang::eng()] = {eng("ab")};
    const auto entry = sort_synonyms(tie);
    CHECK(entry.ranked[0].mention.surface == "abx");
    CHECK(entry.ranked[1].mention.surface == "aby");
    CHECK(entry.ranked[0].h_dist == entry.ranked[1].h_dist);

    // undefined scores go last
    Concept mixed;
    mixed.cui = "C3";
    mixed.mentions[lang::ger()] = {ger("Blutwäsche")};
    CHECK_FALSE(sort_synonyms(mixed).ranked[0].defined);

    Concept empty;
    empty.cui = "C4";
    empty.mentions[lang::eng()] = {eng("fever")};
    CHECK_THROWS_AS(sort_synonyms(empty), ValidationError);
}

TEST_CASE("build_ssd filters, drops German-less concepts and stays ordered") {
    const Lexicon lexicon = fixture_lexicon();
    const auto ssd = build_ssd(lexicon, default_sty_filter());
    CHECK(ssd.size() == 17);
    for (std::size_t i = 1; i < ssd.size(); ++i) {
        CHECK(ssd[i - 1].cui < ssd[i].cui);
    }
    for (const auto& entry : ssd) {
        for (std::size_t i = 1; i < entry.ranked.size(); ++i) {
            const auto& prev = entry.ranked[i - 1];
            const auto& cur = entry.ranked[i];
            if (prev.defined && cur.defined) CHECK(prev.h_dist <= cur.h_dist);
            if (!prev.defined) CHECK_FALSE(cur.defined); // undefined stay last
        }
    }

    CHECK(build_ssd(Lexicon{}, default_sty_filter()).empty());
    // no filter keeps the Neoplastic Process concept too
    CHECK(build_ssd(lexicon, std::nullopt).size() > ssd.size());
}

TEST_CASE("ranking is invariant under score rescaling") {
    const Lexicon lexicon = fixture_lexicon();
    ScoringOptions percent;
    ScoringOptions raw;
    raw.scale = ScoreScale::kRaw;
    const auto a = build_ssd(lexicon, default_sty_filter(), percent);
    const auto b = build_ssd(lexicon, default_sty_filter(), raw);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(ranked_surfaces(a[i]) == ranked_surfaces(b[i]));
    }
}

TEST_CASE("parallel and sequential scoring agree") {
    const Lexicon lexicon = fixture_lexicon();
    const auto seq = build_ssd(lexicon, default_sty_filter(), {}, 1);
    const auto par = build_ssd(lexicon, default_sty_filter(), {}, 4);
    std::ostringstream a, b;
    write_ssd(seq, a);
    write_ssd(par, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("ssd file round trip") {
    const auto ssd = build_ssd(fixture_lexicon(), default_sty_filter());
    std::ostringstream out;
    write_ssd(ssd, out);
    std::istringstream in(out.str());
    const auto reread = read_ssd_entries(in);
    REQUIRE(reread.size() == ssd.size());
    for (std::size_t i = 0; i < ssd.size(); ++i) {
        CHECK(reread[i].cui == ssd[i].cui);
        CHECK(ranked_surfaces(reread[i]) == ranked_surfaces(ssd[i]));
    }
    std::istringstream in2(out.str());
    const SsdTable table = SsdTable::from_stream(in2);
    CHECK(table.concept_count() == ssd.size());
    CHECK(table.score_for("C0024031", "lumbago") == doctest::Approx(0.0));
    CHECK_FALSE(table.score_for("C0024031", "unbekannt").has_value());
    CHECK_FALSE(table.score_for("C9999999", "lumbago").has_value());
}

TEST_CASE("evaluation sheets are deterministic and validated") {
    const auto ssd = build_ssd(fixture_lexicon(), default_sty_filter());
    const auto a = make_evaluation_sheet(ssd, 5, SampleMode::kLowestOnly, 42);
    const auto b = make_evaluation_sheet(ssd, 5, SampleMode::kLowestOnly, 42);
    CHECK(a == b);
    CHECK(a.substr(0, a.find('\n')) ==
          "cui,mention,h_dist,definition-1,definition-2");
    CHECK(std::count(a.begin(), a.end(), '\n') == 6); // header + 5 rows

    const auto other = make_evaluation_sheet(ssd, 5, SampleMode::kLowestOnly, 43);
    CHECK(a != other);

    const auto empty = make_evaluation_sheet(ssd, 0, SampleMode::kLowestOnly, 42);
    CHECK(std::count(empty.begin(), empty.end(), '\n') == 1);

    CHECK_THROWS_AS(
        make_evaluation_sheet(ssd, 1000, SampleMode::kLowestOnly, 42),
        ValidationError);
}

TEST_CASE("pair sheets carry both extremes and the gap") {
    Concept rec;
    rec.cui = "C0024031";
    rec.mentions[lang::ger()] = {ger("Lumbago"), ger("Hexenschuss")};
    rec.mentions[lang::eng()] = {eng("lumbago")};
    rec.mentions[lang::fre()] = {fre("lumbago")};
    const std::vector<SortedSynonymEntry> ssd = {sort_synonyms(rec)};
    const auto sheet =
        make_evaluation_sheet(ssd, 1, SampleMode::kLowestVsHighest, 1);
    std::istringstream lines(sheet);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header ==
          "cui,low_mention,low_h_dist,high_mention,high_h_dist,gap,judgment");
    CHECK(row == "C0024031,Lumbago,0.0000,Hexenschuss,100.0000,100.0000,");

    // a single-mention concept is not eligible for pair sampling
    Concept single;
    single.cui = "C1";
    single.mentions[lang::ger()] = {ger("Fieber")};
    single.mentions[lang::eng()] = {eng("fever")};
    const std::vector<SortedSynonymEntry> singleton = {sort_synonyms(single)};
    CHECK_THROWS_AS(
        make_evaluation_sheet(singleton, 1, SampleMode::kLowestVsHighest, 1),
        ValidationError);
}
