#include "medlex/stemmer.hpp"

#include <algorithm>
#include <vector>

#include "medlex/unicode.hpp"

// Snowball German stemmer. The word is processed as a sequence of
// Unicode scalar values; u and y between vowels are tagged as
// consonants for the region computation, per the published algorithm.

namespace medlex {

namespace {

constexpr char32_t kAUml = 0xE4; // ä
constexpr char32_t kOUml = 0xF6; // ö
constexpr char32_t kUUml = 0xFC; // ü
constexpr char32_t kSharpS = 0xDF; // ß

bool is_vowel(char32_t c) {
    return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' ||
           c == U'y' || c == kAUml || c == kOUml || c == kUUml;
}

bool valid_s_ending(char32_t c) {
    switch (c) {
        case U'b': case U'd': case U'f': case U'g': case U'h': case U'k':
        case U'l': case U'm': case U'n': case U'r': case U't':
            return true;
        default:
            return false;
    }
}

bool valid_st_ending(char32_t c) {
    return valid_s_ending(c) && c != U'r';
}

struct Word {
    std::u32string s;
    std::vector<bool> tagged_consonant; // u/y between vowels
    std::size_t r1 = 0;
    std::size_t r2 = 0;

    bool vowel_at(std::size_t i) const {
        return is_vowel(s[i]) && !tagged_consonant[i];
    }

    bool ends_with(std::u32string_view suffix) const {
        return s.size() >= suffix.size() &&
               std::equal(suffix.rbegin(), suffix.rend(), s.rbegin());
    }

    // true when the whole suffix lies inside the region starting at r
    bool suffix_in(std::size_t r, std::size_t len) const {
        return s.size() - len >= r;
    }

    void chop(std::size_t len) {
        s.resize(s.size() - len);
        tagged_consonant.resize(s.size());
    }
};

Word prepare(std::u32string cps) {
    Word w;
    w.s = std::move(cps);
    w.tagged_consonant.assign(w.s.size(), false);
    for (std::size_t i = 0; i + 1 < w.s.size(); ++i) {
        if (i == 0) continue;
        const char32_t c = w.s[i];
        if ((c == U'u' || c == U'y') && is_vowel(w.s[i - 1]) &&
            is_vowel(w.s[i + 1])) {
            w.tagged_consonant[i] = true;
        }
    }
    // R1: after the first non-vowel following a vowel
    auto region_after = [&w](std::size_t from) {
        std::size_t i = from;
        while (i < w.s.size() && !w.vowel_at(i)) ++i;
        while (i < w.s.size() && w.vowel_at(i)) ++i;
        // i now sits on the first non-vowel following a vowel
        return i < w.s.size() ? i + 1 : w.s.size();
    };
    w.r1 = region_after(0);
    w.r2 = region_after(w.r1);
    // the region before R1 must hold at least 3 letters
    w.r1 = std::max<std::size_t>(w.r1, std::min<std::size_t>(3, w.s.size()));
    return w;
}

void step1(Word& w) {
    static const std::u32string_view group_a[] = {U"ern", U"em", U"er"};
    static const std::u32string_view group_b[] = {U"en", U"es", U"e"};
    for (auto suf : group_a) {
        if (w.ends_with(suf)) {
            if (w.suffix_in(w.r1, suf.size())) w.chop(suf.size());
            return;
        }
    }
    for (auto suf : group_b) {
        if (w.ends_with(suf)) {
            if (w.suffix_in(w.r1, suf.size())) {
                w.chop(suf.size());
                if (w.ends_with(U"niss")) w.chop(1);
            }
            return;
        }
    }
    if (w.ends_with(U"s") && w.s.size() >= 2 &&
        valid_s_ending(w.s[w.s.size() - 2])) {
        if (w.suffix_in(w.r1, 1)) w.chop(1);
    }
}

void step2(Word& w) {
    static const std::u32string_view group_a[] = {U"est", U"en", U"er"};
    for (auto suf : group_a) {
        if (w.ends_with(suf)) {
            if (w.suffix_in(w.r1, suf.size())) w.chop(suf.size());
            return;
        }
    }
    if (w.ends_with(U"st") && w.s.size() >= 6 &&
        valid_st_ending(w.s[w.s.size() - 3])) {
        if (w.suffix_in(w.r1, 2)) w.chop(2);
    }
}

void step3(Word& w) {
    if (w.ends_with(U"end") || w.ends_with(U"ung")) {
        if (w.suffix_in(w.r2, 3)) {
            w.chop(3);
            if (w.ends_with(U"ig") && w.suffix_in(w.r2, 2) &&
                !(w.s.size() >= 3 && w.s[w.s.size() - 3] == U'e')) {
                w.chop(2);
            }
        }
        return;
    }
    if (w.ends_with(U"isch")) {
        if (w.suffix_in(w.r2, 4) &&
            !(w.s.size() >= 5 && w.s[w.s.size() - 5] == U'e')) {
            w.chop(4);
        }
        return;
    }
    if (w.ends_with(U"ig") || w.ends_with(U"ik")) {
        if (w.suffix_in(w.r2, 2) &&
            !(w.s.size() >= 3 && w.s[w.s.size() - 3] == U'e')) {
            w.chop(2);
        }
        return;
    }
    if (w.ends_with(U"lich") || w.ends_with(U"heit")) {
        if (w.suffix_in(w.r2, 4)) {
            w.chop(4);
            if ((w.ends_with(U"er") || w.ends_with(U"en")) &&
                w.suffix_in(w.r1, 2)) {
                w.chop(2);
            }
        }
        return;
    }
    if (w.ends_with(U"keit")) {
        if (w.suffix_in(w.r2, 4)) {
            w.chop(4);
            if (w.ends_with(U"lich") && w.suffix_in(w.r2, 4)) {
                w.chop(4);
            } else if (w.ends_with(U"ig") && w.suffix_in(w.r2, 2)) {
                w.chop(2);
            }
        }
        return;
    }
}

} // namespace

namespace {

std::string stem_pass(std::string_view word) {
    std::u32string cps = utf8_decode(std::string(word));
    // ß -> ss before region marking
    std::u32string expanded;
    expanded.reserve(cps.size() + 2);
    for (char32_t c : cps) {
        if (c == kSharpS) {
            expanded.push_back(U's');
            expanded.push_back(U's');
        } else {
            expanded.push_back(c);
        }
    }
    Word w = prepare(std::move(expanded));
    step1(w);
    step2(w);
    step3(w);
    // unmark and remove umlauts
    for (char32_t& c : w.s) {
        if (c == kAUml) c = U'a';
        else if (c == kOUml) c = U'o';
        else if (c == kUUml) c = U'u';
    }
    return utf8_encode(w.s);
}

} // namespace

std::string german_stem_word(std::string_view word) {
    if (word.empty()) return {};
    // The umlaut removal at the end of a pass can alter the vowel
    // classification of a following pass, so iterate until stable.
    // Real vocabulary converges after the first pass.
    std::string cur(word);
    for (;;) {
        std::string next = stem_pass(cur);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

std::string german_stem(std::string_view text) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ') ++j;
        if (j > i) {
            if (!out.empty()) out.push_back(' ');
            out += german_stem_word(text.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

} // namespace medlex
