#pragma once

#include <string>
#include <string_view>

namespace medlex {

/// Decodes UTF-8 into Unicode scalar values. Throws ParseError on
/// malformed byte sequences.
std::u32string utf8_decode(std::string_view s);

std::string utf8_encode(const std::u32string& cps);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t codepoint_length(std::string_view s);

/// Simple lowercase mapping covering ASCII, Latin-1, Latin Extended-A,
/// Greek and Cyrillic — the repertoire of the supported source
/// vocabularies. Codepoints outside the tables pass through unchanged.
char32_t lower_codepoint(char32_t c);

/// Canonical composition of combining diacritics with their Latin base
/// letters (NFC for the subset that occurs in the lexicon sources).
/// Precomposed input passes through unchanged, so the function is
/// idempotent.
std::u32string compose(const std::u32string& cps);

/// NFC normalization (composition subset, see compose()).
std::string nfc(std::string_view s);

/// NFC + Unicode lowercase. Idempotent; the canonical form used for
/// mention deduplication, index keys and distance computation.
std::string case_fold(std::string_view s);

/// Strips leading/trailing ASCII whitespace.
std::string_view trim(std::string_view s);

/// Collapses internal whitespace runs to single spaces and trims.
std::string collapse_whitespace(std::string_view s);

} // namespace medlex
