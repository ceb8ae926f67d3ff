#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>

#include "grossone/errors.hpp"
#include "grossone/poly_expr.hpp"

namespace grossone::nlp {

/// Reads the NLP problem format:
///
///     n <dim>
///     f: <expr>
///     g: <expr>     (zero or more, meaning g(x) <= 0)
///     h: <expr>     (zero or more, meaning h(x) = 0)
///
/// '#' starts a comment. Parse errors report the absolute byte offset.
inline NlpProblem parse_nlp(std::string_view text) {
    NlpProblem p;
    std::optional<std::size_t> dim;
    bool have_f = false;
    std::size_t offset = 0;
    std::size_t line_no = 0;
    while (offset <= text.size()) {
        std::size_t end = text.find('\n', offset);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(offset, end - offset);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::size_t lead = 0;
        while (lead < line.size() && grossone::detail::is_space(line[lead])) ++lead;
        const std::size_t base = offset + lead;
        line = line.substr(lead);
        while (!line.empty() && grossone::detail::is_space(line.back())) line.remove_suffix(1);

        auto fail = [&](const std::string& what, std::size_t at) -> void {
            throw parse_error("line " + std::to_string(line_no) + ": " + what, at);
        };

        if (!line.empty()) {
            if (!dim) {
                if (line.size() < 2 || line[0] != 'n' || !grossone::detail::is_space(line[1]))
                    fail("expected 'n <dim>'", base);
                std::string_view num = line.substr(2);
                while (!num.empty() && grossone::detail::is_space(num.front())) num.remove_prefix(1);
                std::size_t value = 0;
                auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
                if (ec != std::errc{} || ptr != num.data() + num.size() || value == 0)
                    fail("invalid dimension", base);
                dim = value;
                p.n = value;
            } else {
                if (line.size() < 2 || line[1] != ':') fail("expected 'f:', 'g:' or 'h:'", base);
                const char label = line[0];
                const std::string_view body = line.substr(2);
                PolyExpr e;
                try {
                    e = parse_expr(body, *dim);
                } catch (const parse_error& err) {
                    throw parse_error("line " + std::to_string(line_no) + ": " + err.what(), base + 2 + err.position());
                }
                if (label == 'f') {
                    if (have_f) fail("objective given twice", base);
                    p.f = std::move(e);
                    have_f = true;
                } else if (label == 'g') {
                    p.g.push_back(std::move(e));
                } else if (label == 'h') {
                    p.h.push_back(std::move(e));
                } else {
                    fail("unknown label '" + std::string(1, label) + "'", base);
                }
            }
        }
        if (end == text.size()) break;
        offset = end + 1;
    }
    if (!dim) throw parse_error("missing 'n <dim>' line", 0);
    if (!have_f) throw parse_error("missing objective 'f:' line", text.size());
    return p;
}

inline NlpProblem read_nlp(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_nlp(buf.str());
}

} // namespace grossone::nlp
