#include "medlex/unicode.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "medlex/errors.hpp"

namespace medlex {

namespace {

[[noreturn]] void bad_utf8(std::size_t offset) {
    throw ParseError("invalid UTF-8 at byte offset " + std::to_string(offset));
}

} // namespace

std::u32string utf8_decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char b0 = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        std::size_t len = 0;
        if (b0 < 0x80) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            len = 4;
        } else {
            bad_utf8(i);
        }
        if (i + len > s.size()) bad_utf8(i);
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char b = static_cast<unsigned char>(s[i + k]);
            if ((b & 0xC0) != 0x80) bad_utf8(i + k);
            cp = (cp << 6) | (b & 0x3F);
        }
        // reject overlong encodings and surrogates
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
            (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
            (cp >= 0xD800 && cp <= 0xDFFF)) {
            bad_utf8(i);
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string utf8_encode(const std::u32string& cps) {
    std::string out;
    out.reserve(cps.size() * 2);
    for (char32_t cp : cps) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::size_t codepoint_length(std::string_view s) {
    std::size_t n = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    }
    return n;
}

char32_t lower_codepoint(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 0x20;
    if (c < 0x80) return c;
    // Latin-1 supplement: À..Þ except the multiplication sign
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    if (c == 0x0178) return 0xFF;   // Ÿ
    if (c == 0x1E9E) return 0xDF;   // capital sharp s
    if (c == 0x0130) return U'i';   // İ (simple mapping)
    // Latin Extended-A: upper/lower pairs
    if (c >= 0x0100 && c <= 0x0137) return (c % 2 == 0) ? c + 1 : c;
    if (c >= 0x0139 && c <= 0x0148) return (c % 2 == 1) ? c + 1 : c;
    if (c >= 0x014A && c <= 0x0177) return (c % 2 == 0) ? c + 1 : c;
    if (c >= 0x0179 && c <= 0x017E) return (c % 2 == 1) ? c + 1 : c;
    // Greek
    if (c >= 0x0391 && c <= 0x03A9 && c != 0x03A2) return c + 0x20;
    if (c == 0x03AA || c == 0x03AB) return c + 0x20;
    // Cyrillic
    if (c >= 0x0400 && c <= 0x040F) return c + 0x50;
    if (c >= 0x0410 && c <= 0x042F) return c + 0x20;
    return c;
}

namespace {

struct Composition {
    char32_t base;
    char32_t mark;
    char32_t composed;
};

// Canonical (base, combining mark) -> precomposed pairs for the Latin
// letters that occur in German, English, French, Spanish and Swedish
// vocabulary entries. Marks: 0300 grave, 0301 acute, 0302 circumflex,
// 0303 tilde, 0304 macron, 0306 breve, 0307 dot above, 0308 diaeresis,
// 030A ring, 030B double acute, 030C caron, 0327 cedilla.
constexpr std::array<Composition, 84> kCompositions = {{
    {U'A', 0x300, 0xC0},  {U'A', 0x301, 0xC1},  {U'A', 0x302, 0xC2},
    {U'A', 0x303, 0xC3},  {U'A', 0x308, 0xC4},  {U'A', 0x30A, 0xC5},
    {U'A', 0x304, 0x100}, {U'A', 0x306, 0x102},
    {U'a', 0x300, 0xE0},  {U'a', 0x301, 0xE1},  {U'a', 0x302, 0xE2},
    {U'a', 0x303, 0xE3},  {U'a', 0x308, 0xE4},  {U'a', 0x30A, 0xE5},
    {U'a', 0x304, 0x101}, {U'a', 0x306, 0x103},
    {U'C', 0x327, 0xC7},  {U'C', 0x301, 0x106}, {U'C', 0x30C, 0x10C},
    {U'c', 0x327, 0xE7},  {U'c', 0x301, 0x107}, {U'c', 0x30C, 0x10D},
    {U'D', 0x30C, 0x10E}, {U'd', 0x30C, 0x10F},
    {U'E', 0x300, 0xC8},  {U'E', 0x301, 0xC9},  {U'E', 0x302, 0xCA},
    {U'E', 0x308, 0xCB},  {U'E', 0x304, 0x112}, {U'E', 0x30C, 0x11A},
    {U'e', 0x300, 0xE8},  {U'e', 0x301, 0xE9},  {U'e', 0x302, 0xEA},
    {U'e', 0x308, 0xEB},  {U'e', 0x304, 0x113}, {U'e', 0x30C, 0x11B},
    {U'G', 0x306, 0x11E}, {U'g', 0x306, 0x11F},
    {U'I', 0x300, 0xCC},  {U'I', 0x301, 0xCD},  {U'I', 0x302, 0xCE},
    {U'I', 0x308, 0xCF},  {U'I', 0x304, 0x12A},
    {U'i', 0x300, 0xEC},  {U'i', 0x301, 0xED},  {U'i', 0x302, 0xEE},
    {U'i', 0x308, 0xEF},  {U'i', 0x304, 0x12B},
    {U'N', 0x303, 0xD1},  {U'N', 0x301, 0x143}, {U'N', 0x30C, 0x147},
    {U'n', 0x303, 0xF1},  {U'n', 0x301, 0x144}, {U'n', 0x30C, 0x148},
    {U'O', 0x300, 0xD2},  {U'O', 0x301, 0xD3},  {U'O', 0x302, 0xD4},
    {U'O', 0x303, 0xD5},  {U'O', 0x308, 0xD6},  {U'O', 0x304, 0x14C},
    {U'O', 0x30B, 0x150},
    {U'o', 0x300, 0xF2},  {U'o', 0x301, 0xF3},  {U'o', 0x302, 0xF4},
    {U'o', 0x303, 0xF5},  {U'o', 0x308, 0xF6},  {U'o', 0x304, 0x14D},
    {U'o', 0x30B, 0x151},
    {U'R', 0x30C, 0x158}, {U'r', 0x30C, 0x159},
    {U'S', 0x301, 0x15A}, {U'S', 0x327, 0x15E}, {U'S', 0x30C, 0x160},
    {U's', 0x301, 0x15B}, {U's', 0x327, 0x15F}, {U's', 0x30C, 0x161},
    {U'T', 0x327, 0x162}, {U't', 0x327, 0x163},
    {U'U', 0x300, 0xD9},  {U'U', 0x301, 0xDA},
    {U'u', 0x300, 0xF9},  {U'u', 0x301, 0xFA},
    {U'Y', 0x301, 0xDD},  {U'y', 0x301, 0xFD},
}};

constexpr std::array<Composition, 12> kCompositionsExtra = {{
    {U'U', 0x302, 0xDB},  {U'U', 0x308, 0xDC},  {U'U', 0x304, 0x16A},
    {U'U', 0x30A, 0x16E}, {U'U', 0x30B, 0x170},
    {U'u', 0x302, 0xFB},  {U'u', 0x308, 0xFC},  {U'u', 0x304, 0x16B},
    {U'u', 0x30A, 0x16F}, {U'u', 0x30B, 0x171},
    {U'Y', 0x308, 0x178}, {U'y', 0x308, 0xFF},
}};

constexpr std::array<Composition, 6> kCompositionsZ = {{
    {U'Z', 0x301, 0x179}, {U'Z', 0x307, 0x17B}, {U'Z', 0x30C, 0x17D},
    {U'z', 0x301, 0x17A}, {U'z', 0x307, 0x17C}, {U'z', 0x30C, 0x17E},
}};

bool is_combining_mark(char32_t c) {
    return c >= 0x0300 && c <= 0x036F;
}

char32_t composed_form(char32_t base, char32_t mark) {
    for (const auto& e : kCompositions) {
        if (e.base == base && e.mark == mark) return e.composed;
    }
    for (const auto& e : kCompositionsExtra) {
        if (e.base == base && e.mark == mark) return e.composed;
    }
    for (const auto& e : kCompositionsZ) {
        if (e.base == base && e.mark == mark) return e.composed;
    }
    return 0;
}

} // namespace

std::u32string compose(const std::u32string& cps) {
    std::u32string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        if (!out.empty() && is_combining_mark(cp)) {
            if (char32_t c = composed_form(out.back(), cp); c != 0) {
                out.back() = c;
                continue;
            }
        }
        out.push_back(cp);
    }
    return out;
}

std::string nfc(std::string_view s) {
    return utf8_encode(compose(utf8_decode(s)));
}

std::string case_fold(std::string_view s) {
    std::u32string cps = compose(utf8_decode(s));
    for (char32_t& c : cps) c = lower_codepoint(c);
    return utf8_encode(cps);
}

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool in_ws = false;
    for (char c : trim(s)) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_ws = true;
            continue;
        }
        if (in_ws && !out.empty()) out.push_back(' ');
        in_ws = false;
        out.push_back(c);
    }
    return out;
}

} // namespace medlex
