#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "grossone/errors.hpp"
#include "grossone/gross_linalg.hpp"
#include "grossone/gross_number.hpp"
#include "grossone/poly_expr.hpp"
#include "grossone/rational_matrix.hpp"

namespace grossone::nlp {

struct PenaltyConfig {
    ArithConfig arith;
    int newton_max_iter = 50;
    /// Allowed magnitude of penalty-gradient coefficients at grosspowers >= -1.
    Rational newton_tol = 0;
    /// Newton start; empty means the origin.
    RationalVector start;
    /// Exact mode gives up once a digit needs more bits than this, since an
    /// irrational stationary point is never reached exactly.
    std::size_t max_digit_bits = 4096;
};

/// Gradient and Hessian expressions of one function.
struct Derivatives {
    PolyExpr value;
    std::vector<PolyExpr> grad;
    std::vector<std::vector<PolyExpr>> hess;

    Derivatives(PolyExpr e, std::size_t n) : value(std::move(e)), grad(gradient(value, n)) {
        hess.reserve(n);
        for (const auto& gi : grad) hess.push_back(gradient(gi, n));
    }
};

/// Symbolic derivatives of every function in a problem, computed once.
struct PenaltyModel {
    std::size_t n;
    Derivatives f;
    std::vector<Derivatives> g;
    std::vector<Derivatives> h;

    explicit PenaltyModel(const NlpProblem& p) : n(p.n), f(p.f, p.n) {
        p.validate();
        for (const auto& e : p.g) g.emplace_back(e, n);
        for (const auto& e : p.h) h.emplace_back(e, n);
    }
};

template <class Digit>
BasicGrossVector<Digit> lift(const RationalVector& v) {
    BasicGrossVector<Digit> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = BasicGross<Digit>(digit_traits<Digit>::from_rational(v[i]));
    return out;
}

/// max{0, v}: v when v > 0 in the gross-number order, otherwise zero.
template <class Digit>
bool is_active(const BasicGross<Digit>& v) {
    return v.sign() > 0;
}

/// grad f(x) + w * sum_i grad g_i(x) max{0, g_i(x)} + w * sum_j grad h_j(x) h_j(x)
template <class Digit>
BasicGrossVector<Digit> penalty_gradient(const PenaltyModel& model, const BasicGrossVector<Digit>& x,
                                         const BasicGross<Digit>& weight, const ArithConfig& cfg = {}) {
    if (x.size() != model.n) throw shape_mismatch("point has wrong dimension");
    const std::size_t n = model.n;
    BasicGrossVector<Digit> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = eval_gross(model.f.grad[k], x, cfg);

    auto accumulate = [&](const Derivatives& d, bool inequality) {
        const auto v = eval_gross(d.value, x, cfg);
        if (inequality ? !is_active(v) : v.is_zero()) return;
        const auto scaled = weight * v;
        for (std::size_t k = 0; k < n; ++k) out[k] += eval_gross(d.grad[k], x, cfg) * scaled;
    };
    for (const auto& d : model.g) accumulate(d, true);
    for (const auto& d : model.h) accumulate(d, false);
    for (std::size_t k = 0; k < n; ++k) out[k] = out[k].chopped(cfg.float_zero_tol);
    return out;
}

/// Gradient of the G-weighted penalty f + G/2 |max{0,g}|^2 + G/2 |h|^2.
template <class Digit>
BasicGrossVector<Digit> penalty_gradient(const NlpProblem& p, const BasicGrossVector<Digit>& x,
                                         const ArithConfig& cfg = {}) {
    return penalty_gradient(PenaltyModel(p), x, BasicGross<Digit>::monomial(1), cfg);
}

/// Semismooth Jacobian: each max-term counts as active iff g_i(x) > 0.
template <class Digit>
BasicGrossMatrix<Digit> penalty_jacobian(const PenaltyModel& model, const BasicGrossVector<Digit>& x,
                                         const BasicGross<Digit>& weight, const ArithConfig& cfg = {}) {
    const std::size_t n = model.n;
    BasicGrossMatrix<Digit> jac(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) jac(r, c) = eval_gross(model.f.hess[r][c], x, cfg);

    auto accumulate = [&](const Derivatives& d, bool inequality) {
        const auto v = eval_gross(d.value, x, cfg);
        if (inequality && !is_active(v)) return;
        std::vector<BasicGross<Digit>> grad;
        for (std::size_t k = 0; k < n; ++k) grad.push_back(eval_gross(d.grad[k], x, cfg));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                auto term = grad[r] * grad[c];
                if (!v.is_zero()) term += eval_gross(d.hess[r][c], x, cfg) * v;
                if (!term.is_zero()) jac(r, c) += weight * term;
            }
    };
    for (const auto& d : model.g) accumulate(d, true);
    for (const auto& d : model.h) accumulate(d, false);
    return jac;
}

namespace detail {

template <class Digit>
bool stationary_enough(const BasicGrossVector<Digit>& grad, const Rational& tol) {
    const Digit limit = digit_traits<Digit>::from_rational(tol);
    for (const auto& e : grad)
        for (const auto& t : e.terms()) {
            if (t.power < -1) break;
            if (digit_traits<Digit>::abs(t.digit) > limit) return false;
        }
    return true;
}

template <class Digit>
BasicGrossVector<Digit> newton(const PenaltyModel& model, const BasicGross<Digit>& weight, const PenaltyConfig& cfg) {
    cfg.arith.validate();
    if (cfg.newton_tol < 0) throw error("newton tolerance must be nonnegative");
    const std::size_t n = model.n;
    RationalVector start = cfg.start.empty() ? RationalVector(n, Rational(0)) : cfg.start;
    if (start.size() != n) throw shape_mismatch("start point has wrong dimension");

    const long K = cfg.arith.truncation_order;
    auto x = lift<Digit>(start);
    for (int iter = 0;; ++iter) {
        const auto grad = penalty_gradient(model, x, weight, cfg.arith);
        if (stationary_enough(grad, cfg.newton_tol)) return x;
        if (iter >= cfg.newton_max_iter)
            throw newton_divergence("no stationary point after " + std::to_string(cfg.newton_max_iter) +
                                    " Newton iterations");
        const auto jac = penalty_jacobian(model, x, weight, cfg.arith);
        BasicGrossVector<Digit> rhs(n);
        for (std::size_t k = 0; k < n; ++k) rhs[k] = -grad[k];
        const auto step = solve_linear(jac, rhs, cfg.arith, -K);
        for (std::size_t k = 0; k < n; ++k) x[k] = (x[k] + step[k]).truncated(-K - 1);
        if constexpr (digit_traits<Digit>::exact) {
            for (const auto& e : x)
                for (const auto& t : e.terms())
                    if (mpz_sizeinbase(t.digit.get_num_mpz_t(), 2) > cfg.max_digit_bits ||
                        mpz_sizeinbase(t.digit.get_den_mpz_t(), 2) > cfg.max_digit_bits)
                        throw newton_divergence("Newton iterates exceed " + std::to_string(cfg.max_digit_bits) +
                                                "-bit digits; no exact stationary point in reach");
        }
    }
}

} // namespace detail

/// Stationary point of f + G/2 |max{0,g}|^2 + G/2 |h|^2 by semismooth Newton.
template <class Digit = Rational>
BasicGrossVector<Digit> stationary_solve(const NlpProblem& p, const PenaltyConfig& cfg = {}) {
    return detail::newton<Digit>(PenaltyModel(p), BasicGross<Digit>::monomial(1), cfg);
}

struct KktResiduals {
    Rational stationarity;     // max |grad_x L|
    Rational feasibility_h;    // max |h_j|
    Rational feasibility_g;    // max(0, max g_i)
    Rational complementarity;  // max |mu_i g_i|
    Rational dual_feasibility; // max(0, -min mu_i)
};

struct KktCertificate {
    RationalVector x0;
    RationalVector mu;
    RationalVector pi;
    /// G^-1 coefficient of G * g_i(x*) for each inequality: reported, not used.
    RationalVector mu_tail;
    KktResiduals residuals;
};

inline KktResiduals kkt_residuals(const NlpProblem& p, const RationalVector& x0, const RationalVector& mu,
                                  const RationalVector& pi) {
    if (x0.size() != p.n || mu.size() != p.g.size() || pi.size() != p.h.size())
        throw shape_mismatch("certificate dimensions do not match the problem");
    KktResiduals r;
    RationalVector lag(p.n);
    for (std::size_t k = 0; k < p.n; ++k) lag[k] = eval(differentiate(p.f, k), x0);
    for (std::size_t i = 0; i < p.g.size(); ++i) {
        const Rational gi = eval(p.g[i], x0);
        r.feasibility_g = std::max(r.feasibility_g, Rational(gi));
        r.complementarity = std::max(r.complementarity, Rational(abs(mu[i] * gi)));
        r.dual_feasibility = std::max(r.dual_feasibility, Rational(-mu[i]));
        for (std::size_t k = 0; k < p.n; ++k) lag[k] += eval(differentiate(p.g[i], k), x0) * mu[i];
    }
    for (std::size_t j = 0; j < p.h.size(); ++j) {
        r.feasibility_h = std::max(r.feasibility_h, Rational(abs(eval(p.h[j], x0))));
        for (std::size_t k = 0; k < p.n; ++k) lag[k] += eval(differentiate(p.h[j], k), x0) * pi[j];
    }
    for (const auto& v : lag) r.stationarity = std::max(r.stationarity, Rational(abs(v)));
    return r;
}

/// Reads x0 and the multipliers off a gross stationary point:
/// pi_j = finite part of G h_j(x*), mu_i = max{0, finite part of G g_i(x*)}
/// for g_i(x0) = 0 and 0 for g_i(x0) < 0.
template <class Digit>
KktCertificate extract_certificate(const NlpProblem& p, const BasicGrossVector<Digit>& xstar,
                                   const ArithConfig& cfg = {}) {
    using traits = digit_traits<Digit>;
    if (xstar.size() != p.n) throw shape_mismatch("point has wrong dimension");
    for (const auto& e : xstar)
        if (auto lead = e.leading_power(); lead && *lead > 0)
            throw error("stationary point has an infinite component");

    KktCertificate cert;
    for (const auto& e : xstar) cert.x0.push_back(traits::to_rational(e.finite_part()));
    for (std::size_t i = 0; i < p.g.size(); ++i) {
        const auto v = eval_gross(p.g[i], xstar, cfg);
        const Rational fp = traits::to_rational(v.finite_part());
        if (sgn(fp) > 0)
            throw positivity_violation("g" + std::to_string(i + 1) + " has positive finite part " + to_string(fp) +
                                       " at the stationary point");
        Rational mu(0);
        if (sgn(fp) == 0) mu = std::max(Rational(0), traits::to_rational(v.coefficient(-1)));
        cert.mu.push_back(mu);
        cert.mu_tail.push_back(traits::to_rational(v.coefficient(-2)));
    }
    for (const auto& hj : p.h) cert.pi.push_back(traits::to_rational(eval_gross(hj, xstar, cfg).coefficient(-1)));
    cert.residuals = kkt_residuals(p, cert.x0, cert.mu, cert.pi);
    return cert;
}

struct CqReport {
    bool holds;
    std::size_t rank;
    std::size_t size;
    std::vector<std::size_t> counted_g;  // inequalities with g_i(x0) >= 0
};

/// Linear independence of {grad g_i(x0) : g_i(x0) >= 0} together with every grad h_j(x0).
inline CqReport check_constraint_qualification(const NlpProblem& p, const RationalVector& x0) {
    if (x0.size() != p.n) throw shape_mismatch("point has wrong dimension");
    std::vector<RationalVector> rows;
    CqReport report{true, 0, 0, {}};
    auto grad_at = [&](const PolyExpr& e) {
        RationalVector row(p.n);
        for (std::size_t k = 0; k < p.n; ++k) row[k] = eval(differentiate(e, k), x0);
        return row;
    };
    for (std::size_t i = 0; i < p.g.size(); ++i)
        if (sgn(eval(p.g[i], x0)) >= 0) {
            report.counted_g.push_back(i);
            rows.push_back(grad_at(p.g[i]));
        }
    for (const auto& hj : p.h) rows.push_back(grad_at(hj));
    report.size = rows.size();
    RationalMatrix m(rows.size(), p.n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < p.n; ++k) m(r, k) = rows[r][k];
    report.rank = rank(m);
    report.holds = report.rank == report.size;
    return report;
}

struct KktReport {
    bool pass;
    KktResiduals residuals;
    bool stationarity_ok;
    bool feasibility_g_ok;
    bool feasibility_h_ok;
    bool dual_feasibility_ok;
    bool complementarity_ok;
};

/// Checks the five KKT conditions at cert.x0 in exact arithmetic.
inline KktReport verify_kkt(const NlpProblem& p, const KktCertificate& cert, const Rational& tol = 0) {
    KktReport rep;
    rep.residuals = kkt_residuals(p, cert.x0, cert.mu, cert.pi);
    rep.stationarity_ok = rep.residuals.stationarity <= tol;
    rep.feasibility_g_ok = rep.residuals.feasibility_g <= tol;
    rep.feasibility_h_ok = rep.residuals.feasibility_h <= tol;
    rep.dual_feasibility_ok = rep.residuals.dual_feasibility <= tol;
    rep.complementarity_ok = rep.residuals.complementarity <= tol;
    rep.pass = rep.stationarity_ok && rep.feasibility_g_ok && rep.feasibility_h_ok && rep.dual_feasibility_ok &&
               rep.complementarity_ok;
    return rep;
}

/// phi(x) = sum max{g_i(x), 0}^2 + sum h_j(x)^2
inline Rational infeasibility_measure(const NlpProblem& p, const RationalVector& x) {
    Rational phi(0);
    for (const auto& gi : p.g) {
        const Rational v = eval(gi, x);
        if (sgn(v) > 0) phi += v * v;
    }
    for (const auto& hj : p.h) {
        const Rational v = eval(hj, x);
        phi += v * v;
    }
    return phi;
}

struct BaselinePoint {
    Rational eps;
    RationalVector x;
    Rational phi;
    Rational f;
    Rational penalty;  // f + phi / (2 eps)
};

/// Classical sequential penalty: stationary points of f + phi/(2 eps) for each eps,
/// using the same Newton machinery with weight 1/eps in place of G.
/// Each solve after the first starts from the previous minimizer.
inline std::vector<BaselinePoint> sequential_penalty_baseline(const NlpProblem& p,
                                                              const std::vector<Rational>& eps_sequence,
                                                              const PenaltyConfig& cfg = {}) {
    for (std::size_t k = 0; k < eps_sequence.size(); ++k) {
        if (sgn(eps_sequence[k]) <= 0) throw error("penalty parameters must be positive");
        if (k > 0 && !(eps_sequence[k] < eps_sequence[k - 1]))
            throw error("penalty parameters must be strictly decreasing");
    }
    const PenaltyModel model(p);
    std::vector<BaselinePoint> out;
    PenaltyConfig local = cfg;
    for (const auto& eps : eps_sequence) {
        const Rational weight = 1 / eps;
        const auto sol = detail::newton<Rational>(model, GrossNumber(weight), local);
        BaselinePoint pt;
        pt.eps = eps;
        for (const auto& e : sol) pt.x.push_back(e.finite_part());
        pt.phi = infeasibility_measure(p, pt.x);
        pt.f = eval(p.f, pt.x);
        pt.penalty = pt.f + pt.phi * weight / 2;
        local.start = pt.x;
        out.push_back(std::move(pt));
    }
    return out;
}

} // namespace grossone::nlp
