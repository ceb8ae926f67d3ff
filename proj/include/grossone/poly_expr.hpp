#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grossone/errors.hpp"
#include "grossone/gross_linalg.hpp"
#include "grossone/gross_number.hpp"
#include "grossone/rational.hpp"

namespace grossone::nlp {

using grossone::to_string;

/// Immutable multivariate polynomial expression tree with rational constants.
class PolyExpr {
public:
    enum class Kind { constant, variable, add, mul, neg, pow };

    PolyExpr() : PolyExpr(constant(Rational(0))) {}

    static PolyExpr constant(const Rational& value) {
        auto node = std::make_shared<Node>(Kind::constant);
        node->value = value;
        return PolyExpr(std::move(node));
    }
    /// 0-based variable index (x1 is index 0).
    static PolyExpr variable(std::size_t index) {
        auto node = std::make_shared<Node>(Kind::variable);
        node->index = index;
        return PolyExpr(std::move(node));
    }
    static PolyExpr add(PolyExpr l, PolyExpr r) { return binary(Kind::add, std::move(l), std::move(r)); }
    static PolyExpr mul(PolyExpr l, PolyExpr r) { return binary(Kind::mul, std::move(l), std::move(r)); }
    static PolyExpr neg(PolyExpr e) {
        auto node = std::make_shared<Node>(Kind::neg);
        node->lhs = std::move(e.node_);
        return PolyExpr(std::move(node));
    }
    static PolyExpr pow(PolyExpr e, unsigned long exponent) {
        auto node = std::make_shared<Node>(Kind::pow);
        node->lhs = std::move(e.node_);
        node->exponent = exponent;
        return PolyExpr(std::move(node));
    }

    [[nodiscard]] Kind kind() const noexcept { return node_->kind; }
    [[nodiscard]] const Rational& value() const { return node_->value; }
    [[nodiscard]] std::size_t index() const { return node_->index; }
    [[nodiscard]] unsigned long exponent() const { return node_->exponent; }
    [[nodiscard]] PolyExpr lhs() const { return PolyExpr(node_->lhs); }
    [[nodiscard]] PolyExpr rhs() const { return PolyExpr(node_->rhs); }

    [[nodiscard]] bool is_constant(const Rational& v) const { return kind() == Kind::constant && value() == v; }

    /// One past the largest variable index used.
    [[nodiscard]] std::size_t arity() const {
        switch (kind()) {
            case Kind::constant: return 0;
            case Kind::variable: return index() + 1;
            case Kind::add:
            case Kind::mul: return std::max(lhs().arity(), rhs().arity());
            case Kind::neg:
            case Kind::pow: return lhs().arity();
        }
        return 0;
    }

private:
    struct Node {
        explicit Node(Kind k) : kind(k) {}
        Kind kind;
        Rational value;
        std::size_t index = 0;
        unsigned long exponent = 0;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    explicit PolyExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static PolyExpr binary(Kind k, PolyExpr l, PolyExpr r) {
        auto node = std::make_shared<Node>(k);
        node->lhs = std::move(l.node_);
        node->rhs = std::move(r.node_);
        return PolyExpr(std::move(node));
    }

    std::shared_ptr<const Node> node_;
};

/// Fully parenthesised text, parseable by parse_expr.
inline std::string to_string(const PolyExpr& e) {
    using K = PolyExpr::Kind;
    switch (e.kind()) {
        case K::constant: return sgn(e.value()) < 0 ? "(" + grossone::to_string(e.value()) + ")" : grossone::to_string(e.value());
        case K::variable: return "x" + std::to_string(e.index() + 1);
        case K::add: return "(" + to_string(e.lhs()) + " + " + to_string(e.rhs()) + ")";
        case K::mul: return to_string(e.lhs()) + "*" + to_string(e.rhs());
        case K::neg: return "(-" + to_string(e.lhs()) + ")";
        case K::pow: return "(" + to_string(e.lhs()) + ")^" + std::to_string(e.exponent());
    }
    return {};
}

// Constant-folding constructors used by differentiate.
namespace fold {

inline PolyExpr add(PolyExpr l, PolyExpr r) {
    using K = PolyExpr::Kind;
    if (l.kind() == K::constant && r.kind() == K::constant) return PolyExpr::constant(l.value() + r.value());
    if (l.is_constant(0)) return r;
    if (r.is_constant(0)) return l;
    return PolyExpr::add(std::move(l), std::move(r));
}

inline PolyExpr mul(PolyExpr l, PolyExpr r) {
    using K = PolyExpr::Kind;
    if (l.kind() == K::constant && r.kind() == K::constant) return PolyExpr::constant(l.value() * r.value());
    if (l.is_constant(0) || r.is_constant(0)) return PolyExpr::constant(0);
    if (l.is_constant(1)) return r;
    if (r.is_constant(1)) return l;
    return PolyExpr::mul(std::move(l), std::move(r));
}

inline PolyExpr neg(PolyExpr e) {
    if (e.kind() == PolyExpr::Kind::constant) return PolyExpr::constant(-e.value());
    return PolyExpr::neg(std::move(e));
}

inline PolyExpr pow(PolyExpr e, unsigned long k) {
    if (k == 0) return PolyExpr::constant(1);
    if (k == 1) return e;
    if (e.kind() == PolyExpr::Kind::constant) return PolyExpr::constant(pow_int(e.value(), static_cast<long>(k)));
    return PolyExpr::pow(std::move(e), k);
}

} // namespace fold

/// Symbolic partial derivative with respect to variable `i` (0-based).
inline PolyExpr differentiate(const PolyExpr& e, std::size_t i) {
    using K = PolyExpr::Kind;
    switch (e.kind()) {
        case K::constant: return PolyExpr::constant(0);
        case K::variable: return PolyExpr::constant(e.index() == i ? 1 : 0);
        case K::add: return fold::add(differentiate(e.lhs(), i), differentiate(e.rhs(), i));
        case K::mul:
            return fold::add(fold::mul(differentiate(e.lhs(), i), e.rhs()),
                             fold::mul(e.lhs(), differentiate(e.rhs(), i)));
        case K::neg: return fold::neg(differentiate(e.lhs(), i));
        case K::pow: {
            const auto k = e.exponent();
            if (k == 0) return PolyExpr::constant(0);
            return fold::mul(fold::mul(PolyExpr::constant(Rational(static_cast<long>(k))), fold::pow(e.lhs(), k - 1)),
                             differentiate(e.lhs(), i));
        }
    }
    return PolyExpr::constant(0);
}

inline std::vector<PolyExpr> gradient(const PolyExpr& e, std::size_t n) {
    std::vector<PolyExpr> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(differentiate(e, i));
    return out;
}

/// Evaluates over any ring T; `lift` maps rational constants into T.
template <class T, class Lift>
T evaluate(const PolyExpr& e, std::span<const T> x, Lift&& lift) {
    using K = PolyExpr::Kind;
    switch (e.kind()) {
        case K::constant: return lift(e.value());
        case K::variable:
            if (e.index() >= x.size()) throw shape_mismatch("variable x" + std::to_string(e.index() + 1) + " out of range");
            return x[e.index()];
        case K::add: return evaluate(e.lhs(), x, lift) + evaluate(e.rhs(), x, lift);
        case K::mul: {
            T l = evaluate(e.lhs(), x, lift);
            T r = evaluate(e.rhs(), x, lift);
            return l * r;
        }
        case K::neg: return -evaluate(e.lhs(), x, lift);
        case K::pow: {
            const T base = evaluate(e.lhs(), x, lift);
            T result = lift(Rational(1));
            for (unsigned long k = 0; k < e.exponent(); ++k) result = result * base;
            return result;
        }
    }
    return lift(Rational(0));
}

inline Rational eval(const PolyExpr& e, std::span<const Rational> x) {
    return evaluate<Rational>(e, x, [](const Rational& r) { return r; });
}

/// Exact evaluation over gross-numbers (only ring operations, no truncation).
template <class Digit>
BasicGross<Digit> eval_gross(const PolyExpr& e, const BasicGrossVector<Digit>& x, const ArithConfig& cfg = {}) {
    using G = BasicGross<Digit>;
    const auto result = evaluate<G>(e, x.entries(),
                                    [](const Rational& r) { return G(digit_traits<Digit>::from_rational(r)); });
    return result.chopped(cfg.float_zero_tol);
}

namespace detail {

using grossone::detail::is_digit;
using grossone::detail::is_space;

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t n) : text_(text), n_(n) {}

    PolyExpr parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw parse_error("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    // expr := term (('+'|'-') term)*
    PolyExpr expr() {
        auto e = term();
        while (true) {
            skip_ws();
            if (peek('+')) {
                ++pos_;
                e = PolyExpr::add(std::move(e), term());
            } else if (peek('-')) {
                ++pos_;
                e = PolyExpr::add(std::move(e), PolyExpr::neg(term()));
            } else {
                return e;
            }
        }
    }

    // term := factor ('*' factor)*
    PolyExpr term() {
        auto e = factor();
        while (true) {
            skip_ws();
            if (!peek('*')) return e;
            ++pos_;
            e = PolyExpr::mul(std::move(e), factor());
        }
    }

    // factor := ['-'] atom ['^' uint]
    PolyExpr factor() {
        skip_ws();
        bool negate = false;
        if (peek('-')) {
            ++pos_;
            negate = true;
        }
        auto e = atom();
        skip_ws();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            e = PolyExpr::pow(std::move(e), unsigned_integer());
        }
        return negate ? PolyExpr::neg(std::move(e)) : e;
    }

    // atom := rational | 'x' uint | '(' expr ')'
    PolyExpr atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw parse_error("unexpected end of expression", pos_);
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = expr();
            skip_ws();
            if (!peek(')')) throw parse_error("expected ')'", pos_);
            ++pos_;
            return e;
        }
        if (c == 'x') {
            const std::size_t start = pos_;
            ++pos_;
            const unsigned long k = unsigned_integer();
            if (k == 0 || k > n_)
                throw parse_error("variable x" + std::to_string(k) + " outside x1..x" + std::to_string(n_), start);
            return PolyExpr::variable(k - 1);
        }
        if (is_digit(c)) {
            const std::size_t start = pos_;
            std::string num;
            while (pos_ < text_.size() && is_digit(text_[pos_])) num.push_back(text_[pos_++]);
            skip_ws();
            if (peek('/')) {
                ++pos_;
                skip_ws();
                if (pos_ >= text_.size() || !is_digit(text_[pos_])) throw parse_error("expected denominator", pos_);
                num.push_back('/');
                while (pos_ < text_.size() && is_digit(text_[pos_])) num.push_back(text_[pos_++]);
            }
            try {
                return PolyExpr::constant(parse_rational(num));
            } catch (const parse_error&) {
                throw parse_error("invalid rational", start);
            }
        }
        throw parse_error("unexpected '" + std::string(1, c) + "'", pos_);
    }

    unsigned long unsigned_integer() {
        const std::size_t start = pos_;
        unsigned long value = 0;
        while (pos_ < text_.size() && is_digit(text_[pos_])) {
            value = value * 10 + static_cast<unsigned long>(text_[pos_] - '0');
            if (value > 1000000000UL) throw parse_error("integer too large", start);
            ++pos_;
        }
        if (pos_ == start) throw parse_error("expected unsigned integer", pos_);
        return value;
    }

    bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
    void skip_ws() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }

    std::string_view text_;
    std::size_t n_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a polynomial in variables x1..xn.
inline PolyExpr parse_expr(std::string_view text, std::size_t n) { return detail::ExprParser(text, n).parse(); }

/// min f(x)  s.t.  g(x) <= 0, h(x) = 0
struct NlpProblem {
    std::size_t n = 0;
    PolyExpr f;
    std::vector<PolyExpr> g;
    std::vector<PolyExpr> h;

    void validate() const {
        auto check = [&](const PolyExpr& e, const char* what) {
            if (e.arity() > n) throw invalid_problem(std::string(what) + " uses a variable beyond x" + std::to_string(n));
        };
        check(f, "f");
        for (const auto& e : g) check(e, "g");
        for (const auto& e : h) check(e, "h");
    }
};

} // namespace grossone::nlp
