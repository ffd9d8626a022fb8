#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace medlex {

/// Thrown when wikitext contains an unterminated link/template
/// construct. Pages raising this are skipped and counted by the dump
/// parser rather than aborting the run.
class WikitextError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reduces wikitext to plain text: [[a|b]] -> b, [[a]] -> a, templates
/// {{...}} dropped, '' and ''' quotes dropped, HTML comments and tags
/// dropped. Throws WikitextError on unterminated constructs.
std::string strip_wikitext(std::string_view text);

/// Splits a synonyms line on ';' and ',' after stripping markup,
/// trimming each piece; empty pieces are dropped.
std::vector<std::string> split_synonym_line(std::string_view line);

/// Arguments of every {{Name|...}} template with the given name, e.g.
/// template_args(text, "K") -> {"Medizin", "Anatomie"}.
std::vector<std::string> template_args(std::string_view text,
                                       std::string_view name);

} // namespace medlex
