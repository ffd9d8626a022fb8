#pragma once

#include <string>

#include "medlex/align.hpp"
#include "medlex/corpus.hpp"

namespace medlex {

// JSON renderings of the report records (2-space indent, sorted keys,
// trailing newline). Byte-stable given equal inputs.

std::string to_json(const AlignmentReport& report);
std::string to_json(const CoverageReport& report);
std::string to_json(const CorpusStats& stats);
std::string experiment2_json(const CoverageReport& umls,
                             const CoverageReport& wumls);

} // namespace medlex
