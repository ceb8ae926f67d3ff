#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "grossone/errors.hpp"
#include "grossone/simplex.hpp"

namespace grossone::lp {

namespace detail {

struct Line {
    std::size_t number;  // 1-based
    std::size_t offset;  // byte offset of the line start
    std::vector<std::string> tokens;
};

// Non-blank lines with '#' comments removed, split on whitespace.
inline std::vector<Line> tokenize_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t offset = 0;
    std::size_t number = 0;
    while (offset <= text.size()) {
        std::size_t end = text.find('\n', offset);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string_view line = text.substr(offset, end - offset);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::istringstream in{std::string(line)};
        Line parsed{number, offset, {}};
        for (std::string tok; in >> tok;) parsed.tokens.push_back(tok);
        if (!parsed.tokens.empty()) out.push_back(std::move(parsed));
        if (end == text.size()) break;
        offset = end + 1;
    }
    return out;
}

[[noreturn]] inline void fail(const Line& line, const std::string& what) {
    throw parse_error("line " + std::to_string(line.number) + ": " + what, line.offset);
}

inline RationalVector labelled_row(const Line& line, std::string_view label, std::size_t count) {
    if (line.tokens.front() != label) fail(line, "expected '" + std::string(label) + "'");
    if (line.tokens.size() != count + 1)
        fail(line, "expected " + std::to_string(count) + " values, got " + std::to_string(line.tokens.size() - 1));
    RationalVector row;
    for (std::size_t k = 1; k < line.tokens.size(); ++k) {
        try {
            row.push_back(parse_rational(line.tokens[k]));
        } catch (const parse_error&) {
            fail(line, "invalid rational '" + line.tokens[k] + "'");
        }
    }
    return row;
}

inline std::size_t parse_count(const Line& line, const std::string& tok) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail(line, "invalid dimension '" + tok + "'");
    return value;
}

} // namespace detail

/// Reads the line-oriented LP format:
///
///     m n
///     c: c1 ... cn
///     A: a11 ... a1n      (m lines)
///     b: b1 ... bm
inline LpStandardForm parse_lp(std::string_view text) {
    const auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw parse_error("empty LP file", 0);
    const auto& header = lines.front();
    if (header.tokens.size() != 2) detail::fail(header, "expected 'm n'");
    const std::size_t m = detail::parse_count(header, header.tokens[0]);
    const std::size_t n = detail::parse_count(header, header.tokens[1]);
    if (m == 0 || n == 0) detail::fail(header, "m and n must be positive");
    if (lines.size() != m + 3)
        throw parse_error("expected " + std::to_string(m + 3) + " non-comment lines, got " +
                              std::to_string(lines.size()),
                          lines.back().offset);

    LpStandardForm lp{RationalMatrix(m, n), {}, detail::labelled_row(lines[1], "c:", n)};
    for (std::size_t i = 0; i < m; ++i) {
        const auto row = detail::labelled_row(lines[2 + i], "A:", n);
        for (std::size_t j = 0; j < n; ++j) lp.A(i, j) = row[j];
    }
    lp.b = detail::labelled_row(lines[2 + m], "b:", m);
    if (m > n) detail::fail(header, "m must not exceed n");
    return lp;
}

inline LpStandardForm read_lp(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_lp(buf.str());
}

inline std::string format_lp(const LpStandardForm& lp) {
    std::string out = std::to_string(lp.m()) + " " + std::to_string(lp.n()) + "\nc:";
    for (const auto& v : lp.c) out += " " + to_string(v);
    for (std::size_t i = 0; i < lp.m(); ++i) {
        out += "\nA:";
        for (std::size_t j = 0; j < lp.n(); ++j) out += " " + to_string(lp.A(i, j));
    }
    out += "\nb:";
    for (const auto& v : lp.b) out += " " + to_string(v);
    return out + "\n";
}

/// "iter=<k> enter=<j> leave=<j> obj=<gross>", columns numbered from 1.
inline std::string format_event(const PivotEvent& e) {
    return "iter=" + std::to_string(e.iteration) + " enter=" + std::to_string(e.entering + 1) +
           " leave=" + std::to_string(e.leaving + 1) + " obj=" + format(e.objective);
}

} // namespace grossone::lp
