#pragma once

#include <string>
#include <string_view>

namespace medlex {

/// Snowball German suffix-stripping stem of a single case-folded word.
/// Deterministic and idempotent. The final step folds ä/ö/ü to a/o/u
/// and ß to ss, so stems are comparable across spelling variants.
std::string german_stem_word(std::string_view word);

/// Stems each whitespace-separated token of the input and rejoins the
/// tokens with single spaces. Input is expected to be case-folded.
std::string german_stem(std::string_view text);

} // namespace medlex
