#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <system_error>

#include "grossone/errors.hpp"

namespace grossone {

/// Arbitrary-precision exact rational, always kept in lowest terms.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Canonical text: "p" for integers, "p/q" otherwise, sign on the numerator.
inline std::string to_string(const Rational& r) {
    return r.get_str(10);
}

inline int sign(const Rational& r) { return sgn(r); }

/// r^n for any integer n; r must be nonzero when n < 0.
inline Rational pow_int(const Rational& r, long n) {
    if (n < 0) {
        if (sgn(r) == 0) throw division_by_zero();
        Rational inv = 1 / r;
        return pow_int(inv, -n);
    }
    Rational result(1);
    Rational base = r;
    auto e = static_cast<unsigned long>(n);
    while (e != 0) {
        if (e & 1UL) result *= base;
        e >>= 1UL;
        if (e != 0) base *= base;
    }
    return result;
}

namespace detail {

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

} // namespace detail

/// Parses "[+-]digits[/digits]" with no inner whitespace.
inline Rational parse_rational(std::string_view text) {
    std::size_t i = 0;
    std::string num;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        if (text[i] == '-') num.push_back('-');
        ++i;
    }
    std::size_t digits_start = i;
    while (i < text.size() && detail::is_digit(text[i])) num.push_back(text[i++]);
    if (i == digits_start) throw parse_error("expected digits", i);
    std::string den = "1";
    if (i < text.size() && text[i] == '/') {
        ++i;
        std::size_t den_start = i;
        den.clear();
        while (i < text.size() && detail::is_digit(text[i])) den.push_back(text[i++]);
        if (i == den_start) throw parse_error("expected denominator digits", i);
    }
    if (i != text.size()) throw parse_error("unexpected character in rational", i);
    mpz_class n(num, 10);
    mpz_class d(den, 10);
    if (d == 0) throw parse_error("zero denominator", digits_start);
    Rational r(n, d);
    r.canonicalize();
    return r;
}

/// Per-digit-type policy used by the gross-number templates.
template <class Digit>
struct digit_traits;

template <>
struct digit_traits<Rational> {
    static constexpr bool exact = true;
    static bool is_zero(const Rational& d) { return sgn(d) == 0; }
    static int sign(const Rational& d) { return sgn(d); }
    static Rational abs(const Rational& d) { return ::abs(d); }
    static Rational from_rational(const Rational& r) { return r; }
    static Rational to_rational(const Rational& d) { return d; }
    static std::string to_string(const Rational& d) { return grossone::to_string(d); }
    static bool negligible(const Rational& d, double /*tol*/) { return sgn(d) == 0; }
};

template <>
struct digit_traits<double> {
    static constexpr bool exact = false;
    static bool is_zero(double d) { return d == 0.0; }
    static int sign(double d) { return (d > 0.0) - (d < 0.0); }
    static double abs(double d) { return std::fabs(d); }
    static double from_rational(const Rational& r) { return r.get_d(); }
    static Rational to_rational(double d) { return Rational(d); }
    static std::string to_string(double d) {
        char buf[64];
        auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
        if (ec != std::errc{}) return "nan";
        return std::string(buf, end);
    }
    static bool negligible(double d, double tol) { return std::fabs(d) <= tol; }
};

} // namespace grossone
