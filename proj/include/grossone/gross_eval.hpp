#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "grossone/errors.hpp"
#include "grossone/gross_number.hpp"

namespace grossone {

namespace detail {

// expr  := term (('+'|'-') term)*
// term  := unary (('*'|'/') unary)*
// unary := '-' unary | power
// power := atom ['^' int]
// atom  := literal | 'G' | '(' expr ')'
//
// A literal written without spaces ("3/4", "1/16G^-1", "4G") is read as one
// gross-number term, so canonical output can be fed back in unchanged.
template <class Digit>
class GrossExprParser {
public:
    using G = BasicGross<Digit>;

    GrossExprParser(std::string_view text, const ArithConfig& cfg) : text_(text), cfg_(cfg) {}

    G parse() {
        G v = expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return v;
    }

private:
    G expr() {
        G v = term();
        while (true) {
            skip_ws();
            if (peek('+')) {
                ++pos_;
                v = v + term();
            } else if (peek('-')) {
                ++pos_;
                v = v - term();
            } else {
                return v;
            }
        }
    }

    G term() {
        G v = unary();
        while (true) {
            skip_ws();
            if (peek('*')) {
                ++pos_;
                v = v * unary();
            } else if (peek('/')) {
                const std::size_t at = pos_++;
                G d = unary();
                if (d.is_zero()) throw parse_error("division by zero", at);
                v = div(v, d, cfg_);
            } else {
                return v;
            }
        }
    }

    G unary() {
        skip_ws();
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        return power();
    }

    G power() {
        const std::size_t at = pos_;
        G base = atom();
        skip_ws();
        if (!peek('^')) return base;
        ++pos_;
        skip_ws();
        const long e = integer();
        if (e < 0 && base.is_zero()) throw parse_error("zero raised to a negative power", at);
        return grossone::pow(base, e, cfg_);
    }

    G atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            G v = expr();
            skip_ws();
            if (!peek(')')) throw parse_error("expected ')'", pos_);
            ++pos_;
            return v;
        }
        if (c == 'G') {
            ++pos_;
            return G::monomial(1, Digit(1));
        }
        if (is_digit(c)) return literal();
        throw parse_error("unexpected '" + std::string(1, c) + "'", pos_);
    }

    G literal() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        if (peek('/') && pos_ + 1 < text_.size() && is_digit(text_[pos_ + 1])) {
            const std::size_t slash = pos_++;
            bool zero = true;
            for (; pos_ < text_.size() && is_digit(text_[pos_]); ++pos_) zero = zero && text_[pos_] == '0';
            if (zero) throw parse_error("division by zero", slash);
        }
        Rational value;
        try {
            value = parse_rational(text_.substr(start, pos_ - start));
        } catch (const parse_error&) {
            throw parse_error("invalid number", start);
        }
        const Digit digit = digit_traits<Digit>::from_rational(value);
        if (!peek('G')) return G(digit);
        ++pos_;
        long power = 1;
        if (peek('^')) {
            ++pos_;
            power = integer();
        }
        return G::monomial(power, digit);
    }

    long integer() {
        const std::size_t start = pos_;
        bool negative = false;
        if (peek('-') || peek('+')) negative = text_[pos_++] == '-';
        const std::size_t digits = pos_;
        long value = 0;
        while (pos_ < text_.size() && is_digit(text_[pos_])) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1000000) throw parse_error("exponent too large", start);
            ++pos_;
        }
        if (pos_ == digits) throw parse_error("expected integer exponent", pos_);
        return negative ? -value : value;
    }

    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
    void skip_ws() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    std::string_view text_;
    const ArithConfig& cfg_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Evaluates an arithmetic expression over gross-number literals, e.g. "G / (1 + 4*G)".
template <class Digit = Rational>
BasicGross<Digit> evaluate_gross_expression(std::string_view text, const ArithConfig& cfg = {}) {
    cfg.validate();
    return detail::GrossExprParser<Digit>(text, cfg).parse();
}

} // namespace grossone
