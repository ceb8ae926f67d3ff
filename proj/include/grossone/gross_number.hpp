#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grossone/errors.hpp"
#include "grossone/rational.hpp"

namespace grossone {

enum class DigitMode { exact_rational, floating };

/// Arithmetic settings shared by every operation that may truncate.
struct ArithConfig {
    /// Number of series terms kept, counted from the leading grosspower of a quotient.
    int truncation_order = 8;
    DigitMode digit_mode = DigitMode::exact_rational;
    /// Digits with magnitude at or below this are dropped (floating mode only).
    double float_zero_tol = 0.0;

    void validate() const {
        if (truncation_order < 1) throw error("truncation order must be at least 1");
        if (float_zero_tol < 0.0) throw error("float zero tolerance must be nonnegative");
        if (digit_mode == DigitMode::exact_rational && float_zero_tol != 0.0)
            throw error("float zero tolerance must be 0 in exact-rational mode");
    }
};

/// A finite sum of grossdigit * G^grosspower terms with integer grosspowers.
///
/// Terms are kept sorted by strictly descending grosspower with no zero digit,
/// so the empty term list is zero and the first term decides the sign.
template <class Digit>
class BasicGross {
public:
    using digit_type = Digit;
    using traits = digit_traits<Digit>;

    struct Term {
        long power;
        Digit digit;
        friend bool operator==(const Term&, const Term&) = default;
    };

    BasicGross() = default;
    BasicGross(const Digit& constant) { // NOLINT(google-explicit-constructor)
        if (!traits::is_zero(constant)) terms_.push_back({0, constant});
    }
    template <std::integral I>
    BasicGross(I constant) : BasicGross(Digit(static_cast<long>(constant))) {} // NOLINT

    /// Normalizes arbitrary terms: merges duplicate powers, drops zeros, sorts.
    static BasicGross make(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.power > b.power; });
        BasicGross out;
        for (auto& t : terms) {
            if (!out.terms_.empty() && out.terms_.back().power == t.power) {
                out.terms_.back().digit += t.digit;
            } else {
                if (!out.terms_.empty() && traits::is_zero(out.terms_.back().digit))
                    out.terms_.pop_back();
                out.terms_.push_back(std::move(t));
            }
        }
        if (!out.terms_.empty() && traits::is_zero(out.terms_.back().digit)) out.terms_.pop_back();
        return out;
    }

    /// digit * G^power
    static BasicGross monomial(long power, const Digit& digit = Digit(1)) {
        BasicGross out;
        if (!traits::is_zero(digit)) out.terms_.push_back({power, digit});
        return out;
    }

    [[nodiscard]] std::span<const Term> terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }
    [[nodiscard]] int sign() const { return terms_.empty() ? 0 : traits::sign(terms_.front().digit); }

    /// Highest grosspower present; empty for zero.
    [[nodiscard]] std::optional<long> leading_power() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.front().power;
    }
    [[nodiscard]] std::optional<long> trailing_power() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.back().power;
    }

    [[nodiscard]] Digit coefficient(long power) const {
        for (const auto& t : terms_) {
            if (t.power == power) return t.digit;
            if (t.power < power) break;
        }
        return Digit(0);
    }

    [[nodiscard]] Digit finite_part() const { return coefficient(0); }

    /// Drops every term with grosspower below `min_power`.
    [[nodiscard]] BasicGross truncated(long min_power) const {
        BasicGross out;
        for (const auto& t : terms_) {
            if (t.power < min_power) break;
            out.terms_.push_back(t);
        }
        return out;
    }

    /// Drops digits whose magnitude is at or below `tol`.
    [[nodiscard]] BasicGross chopped(double tol) const {
        BasicGross out;
        for (const auto& t : terms_)
            if (!traits::negligible(t.digit, tol)) out.terms_.push_back(t);
        return out;
    }

    /// Multiplies by G^shift.
    [[nodiscard]] BasicGross shifted(long shift) const {
        BasicGross out = *this;
        for (auto& t : out.terms_) t.power += shift;
        return out;
    }

    BasicGross operator-() const {
        BasicGross out = *this;
        for (auto& t : out.terms_) t.digit = -t.digit;
        return out;
    }

    friend BasicGross operator+(const BasicGross& a, const BasicGross& b) {
        BasicGross out;
        out.terms_.reserve(a.terms_.size() + b.terms_.size());
        auto i = a.terms_.begin();
        auto j = b.terms_.begin();
        while (i != a.terms_.end() || j != b.terms_.end()) {
            if (j == b.terms_.end() || (i != a.terms_.end() && i->power > j->power)) {
                out.terms_.push_back(*i++);
            } else if (i == a.terms_.end() || j->power > i->power) {
                out.terms_.push_back(*j++);
            } else {
                Digit d = i->digit + j->digit;
                if (!traits::is_zero(d)) out.terms_.push_back({i->power, std::move(d)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    friend BasicGross operator-(const BasicGross& a, const BasicGross& b) { return a + (-b); }

    friend BasicGross operator*(const BasicGross& a, const BasicGross& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Term> products;
        products.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) products.push_back({x.power + y.power, Digit(x.digit * y.digit)});
        return make(std::move(products));
    }

    BasicGross& operator+=(const BasicGross& o) { return *this = *this + o; }
    BasicGross& operator-=(const BasicGross& o) { return *this = *this - o; }
    BasicGross& operator*=(const BasicGross& o) { return *this = *this * o; }

    friend bool operator==(const BasicGross&, const BasicGross&) = default;

    /// Total order: sign of the leading digit of the difference.
    friend std::strong_ordering operator<=>(const BasicGross& a, const BasicGross& b) {
        int s = (a - b).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    std::vector<Term> terms_;
};

using GrossNumber = BasicGross<Rational>;
using GrossFloat = BasicGross<double>;

template <class Digit>
std::strong_ordering cmp(const BasicGross<Digit>& a, const BasicGross<Digit>& b) {
    return a <=> b;
}

template <class Digit>
Digit finite_part(const BasicGross<Digit>& a) {
    return a.finite_part();
}

template <class Digit>
Digit coefficient(const BasicGross<Digit>& a, long power) {
    return a.coefficient(power);
}

/// G, or digit * G^power.
inline GrossNumber grossone_power(long power, const Rational& digit = Rational(1)) {
    return GrossNumber::monomial(power, digit);
}

/// Quotient a / b as a series truncated to cfg.truncation_order terms.
///
/// With b = beta * G^q * (1 + r), the result is
/// a * beta^-1 * G^-q * sum_{i<K} (-r)^i, keeping only grosspowers
/// >= lead(a) - q - K + 1. The residual a - div(a, b) * b then has leading
/// grosspower at most lead(a) - K, and is exactly zero when b is a monomial.
template <class Digit>
BasicGross<Digit> div(const BasicGross<Digit>& a, const BasicGross<Digit>& b, const ArithConfig& cfg = {}) {
    using G = BasicGross<Digit>;
    using Term = typename G::Term;
    if (b.is_zero()) throw division_by_zero();
    if (a.is_zero()) return {};

    const auto lead = b.terms().front();
    const long q = lead.power;
    const Digit& beta = lead.digit;

    if (b.size() == 1) {
        std::vector<Term> out;
        out.reserve(a.size());
        for (const auto& t : a.terms()) out.push_back({t.power - q, Digit(t.digit / beta)});
        return G::make(std::move(out)).chopped(cfg.float_zero_tol);
    }

    cfg.validate();
    const long K = cfg.truncation_order;
    // -r, with all grosspowers strictly negative.
    std::vector<Term> neg_r_terms;
    for (const auto& t : b.terms().subspan(1)) neg_r_terms.push_back({t.power - q, Digit(-(t.digit / beta))});
    const G neg_r = G::make(std::move(neg_r_terms));

    const long floor = -(K - 1);
    G series(Digit(1));
    G power_term(Digit(1));
    for (long i = 1; i < K; ++i) {
        power_term = (power_term * neg_r).truncated(floor);
        if (power_term.is_zero()) break;
        series += power_term;
    }

    const long a_lead = *a.leading_power();
    const G product = a * series;
    std::vector<Term> scaled;
    for (const auto& t : product.terms()) scaled.push_back({t.power - q, Digit(t.digit / beta)});
    return G::make(std::move(scaled)).truncated(a_lead - q - K + 1).chopped(cfg.float_zero_tol);
}

/// a^n; negative n goes through div(1, a^-n).
template <class Digit>
BasicGross<Digit> pow(const BasicGross<Digit>& a, long n, const ArithConfig& cfg = {}) {
    using G = BasicGross<Digit>;
    if (n < 0) return div(G(Digit(1)), pow(a, -n, cfg), cfg);
    G result(Digit(1));
    for (long i = 0; i < n; ++i) result *= a;
    return result;
}

/// Substitutes the positive value t for G: sum c_p * t^p.
inline Rational evaluate_at(const GrossNumber& a, const Rational& t) {
    if (sgn(t) <= 0) throw error("evaluate_at requires t > 0");
    Rational sum(0);
    for (const auto& term : a.terms()) sum += term.digit * pow_int(t, term.power);
    return sum;
}

inline double evaluate_at(const GrossFloat& a, double t) {
    double sum = 0.0;
    for (const auto& term : a.terms()) sum += term.digit * std::pow(t, static_cast<double>(term.power));
    return sum;
}

/// Canonical text, e.g. "G - 1" or "1/4 - 1/16G^-1 + 1/64G^-2".
template <class Digit>
std::string format(const BasicGross<Digit>& a) {
    using traits = digit_traits<Digit>;
    if (a.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : a.terms()) {
        const bool negative = traits::sign(t.digit) < 0;
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const Digit magnitude = traits::abs(t.digit);
        if (t.power == 0) {
            out += traits::to_string(magnitude);
            continue;
        }
        if (!(magnitude == Digit(1))) out += traits::to_string(magnitude);
        out += 'G';
        if (t.power != 1) out += '^' + std::to_string(t.power);
    }
    return out;
}

template <class Digit>
std::ostream& operator<<(std::ostream& os, const BasicGross<Digit>& a) {
    return os << format(a);
}

namespace detail {

class GrossLiteralParser {
public:
    explicit GrossLiteralParser(std::string_view text) : text_(text) {}

    GrossNumber parse() {
        std::vector<GrossNumber::Term> terms;
        skip_ws();
        terms.push_back(term(false));
        skip_ws();
        while (pos_ < text_.size()) {
            const char op = text_[pos_];
            if (op != '+' && op != '-') throw parse_error("expected '+' or '-'", pos_);
            ++pos_;
            skip_ws();
            auto t = term(op == '-');
            terms.push_back(std::move(t));
            skip_ws();
        }
        return GrossNumber::make(std::move(terms));
    }

private:
    GrossNumber::Term term(bool negate) {
        bool negative = negate;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            if (text_[pos_] == '-') negative = !negative;
            ++pos_;
        }
        Rational digit(1);
        bool has_digit = false;
        if (pos_ < text_.size() && is_digit(text_[pos_])) {
            digit = unsigned_rational();
            has_digit = true;
        }
        long power = 0;
        if (pos_ < text_.size() && text_[pos_] == 'G') {
            ++pos_;
            power = 1;
            if (pos_ < text_.size() && text_[pos_] == '^') {
                ++pos_;
                power = signed_integer();
            }
        } else if (!has_digit) {
            throw parse_error("expected a rational or 'G'", pos_);
        }
        if (negative) digit = -digit;
        return {power, digit};
    }

    Rational unsigned_rational() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            const std::size_t den_start = pos_;
            while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
            if (pos_ == den_start) throw parse_error("expected denominator", pos_);
        }
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const parse_error& e) {
            throw parse_error("invalid rational", start + e.position());
        }
    }

    long signed_integer() {
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (pos_ == digits) throw parse_error("expected integer grosspower", pos_);
        long value = 0;
        const char* first = text_.data() + (text_[start] == '+' ? start + 1 : start);
        auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, value);
        if (ec != std::errc{}) throw parse_error("grosspower out of range", start);
        return value;
    }

    void skip_ws() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the canonical gross-number text ("G - 1", "1/4 - 1/16G^-1", "1G^1 + -1G^0").
inline GrossNumber parse_gross(std::string_view text) {
    return detail::GrossLiteralParser(text).parse();
}

} // namespace grossone
