#include "medlex/wikitext.hpp"

#include "medlex/unicode.hpp"

namespace medlex {

namespace {

// consumes {{...}} including nesting; `i` points at the opening "{{"
std::size_t skip_template(std::string_view text, std::size_t i) {
    int depth = 0;
    while (i < text.size()) {
        if (text.compare(i, 2, "{{") == 0) {
            depth += 1;
            i += 2;
        } else if (text.compare(i, 2, "}}") == 0) {
            depth -= 1;
            i += 2;
            if (depth == 0) return i;
        } else {
            ++i;
        }
    }
    throw WikitextError("unterminated template");
}

} // namespace

std::string strip_wikitext(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text.compare(i, 4, "<!--") == 0) {
            const auto end = text.find("-->", i + 4);
            if (end == std::string_view::npos) {
                throw WikitextError("unterminated comment");
            }
            i = end + 3;
        } else if (text.compare(i, 2, "{{") == 0) {
            i = skip_template(text, i);
        } else if (text.compare(i, 2, "[[") == 0) {
            const auto end = text.find("]]", i + 2);
            if (end == std::string_view::npos) {
                throw WikitextError("unterminated link");
            }
            std::string_view inner = text.substr(i + 2, end - i - 2);
            // [[target|label]] keeps the label
            if (const auto pipe = inner.rfind('|'); pipe != std::string_view::npos) {
                inner = inner.substr(pipe + 1);
            }
            out += inner;
            i = end + 2;
        } else if (text.compare(i, 2, "''") == 0) {
            i += 2;
            while (i < text.size() && text[i] == '\'') ++i;
        } else if (text[i] == '<') {
            const auto end = text.find('>', i + 1);
            if (end == std::string_view::npos) {
                throw WikitextError("unterminated markup tag");
            }
            i = end + 1;
        } else {
            out.push_back(text[i]);
            ++i;
        }
    }
    return collapse_whitespace(out);
}

std::vector<std::string> split_synonym_line(std::string_view line) {
    // drop the leading sense marker ":[1]" if present
    std::string_view rest = trim(line);
    if (!rest.empty() && rest.front() == ':') rest.remove_prefix(1);
    rest = trim(rest);
    if (!rest.empty() && rest.front() == '[') {
        if (const auto close = rest.find(']');
            close != std::string_view::npos && rest.compare(0, 2, "[[") != 0) {
            rest.remove_prefix(close + 1);
        }
    }
    const std::string plain = strip_wikitext(rest);
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= plain.size(); ++i) {
        if (i == plain.size() || plain[i] == ';' || plain[i] == ',') {
            const auto piece = trim(std::string_view(plain).substr(start, i - start));
            if (!piece.empty()) out.emplace_back(piece);
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string> template_args(std::string_view text,
                                       std::string_view name) {
    std::vector<std::string> args;
    std::size_t i = 0;
    while (i + 1 < text.size()) {
        if (text.compare(i, 2, "{{") != 0) {
            ++i;
            continue;
        }
        std::size_t end;
        try {
            end = skip_template(text, i);
        } catch (const WikitextError&) {
            return args; // unterminated tail holds no complete template
        }
        const std::string_view body = text.substr(i + 2, end - i - 4);
        const auto first_pipe = body.find('|');
        const std::string_view tpl_name =
            trim(first_pipe == std::string_view::npos ? body
                                                      : body.substr(0, first_pipe));
        if (tpl_name == name && first_pipe != std::string_view::npos) {
            std::string_view rest = body.substr(first_pipe + 1);
            std::size_t start = 0;
            for (std::size_t k = 0; k <= rest.size(); ++k) {
                if (k == rest.size() || rest[k] == '|') {
                    const auto piece = trim(rest.substr(start, k - start));
                    // named parameters and empty positions are not categories
                    if (!piece.empty() &&
                        piece.find('=') == std::string_view::npos) {
                        args.emplace_back(piece);
                    }
                    start = k + 1;
                }
            }
        }
        i = end;
    }
    return args;
}

} // namespace medlex
