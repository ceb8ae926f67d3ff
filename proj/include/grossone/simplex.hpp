#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grossone/errors.hpp"
#include "grossone/gross_linalg.hpp"
#include "grossone/gross_number.hpp"
#include "grossone/rational_matrix.hpp"

namespace grossone::lp {

using grossone::to_string;

/// min <c, x>  s.t.  A x = b, x >= 0
struct LpStandardForm {
    RationalMatrix A;
    RationalVector b;
    RationalVector c;

    [[nodiscard]] std::size_t m() const noexcept { return A.rows(); }
    [[nodiscard]] std::size_t n() const noexcept { return A.cols(); }

    void validate() const {
        if (b.size() != m()) throw shape_mismatch("b has length " + std::to_string(b.size()) + ", expected " +
                                                  std::to_string(m()));
        if (c.size() != n()) throw shape_mismatch("c has length " + std::to_string(c.size()) + ", expected " +
                                                  std::to_string(n()));
        if (m() > n()) throw invalid_problem("more rows than columns");
    }
};

/// Ordered basic column indices (0-based). Position k of the basis owns row k
/// of the tableau and, for the reference basis, the perturbation G^-(k+1).
using Basis = std::vector<std::size_t>;

enum class EnteringKind { dantzig, bland, fixed_order };

struct EnteringRule {
    EnteringKind kind = EnteringKind::dantzig;
    /// Column priority for fixed_order; columns missing from it rank last by index.
    std::vector<std::size_t> order;

    static EnteringRule dantzig() { return {EnteringKind::dantzig, {}}; }
    static EnteringRule bland() { return {EnteringKind::bland, {}}; }
    static EnteringRule fixed(std::vector<std::size_t> order) { return {EnteringKind::fixed_order, std::move(order)}; }
};

enum class LeavingRule { plain, grossone, lexicographic };

inline std::string to_string(LeavingRule r) {
    switch (r) {
        case LeavingRule::plain: return "plain";
        case LeavingRule::grossone: return "grossone";
        case LeavingRule::lexicographic: return "lexicographic";
    }
    return "?";
}

inline std::string to_string(EnteringKind k) {
    switch (k) {
        case EnteringKind::dantzig: return "dantzig";
        case EnteringKind::bland: return "bland";
        case EnteringKind::fixed_order: return "fixed";
    }
    return "?";
}

struct PivotEvent {
    std::size_t iteration;
    Basis basis;  // before the pivot
    std::size_t entering;
    std::size_t leaving;
    /// Objective at `basis`: <c_B, x_B> for the plain rule, the perturbed
    /// <c_B, B^-1 (b + A_B0 e)> for the grossone and lexicographic rules.
    GrossNumber objective;

    friend bool operator==(const PivotEvent&, const PivotEvent&) = default;
};

struct PivotTrace {
    std::vector<PivotEvent> events;
};

enum class SolveStatus { optimal, unbounded, infeasible, cycle_detected, iteration_limit };

inline std::string to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::optimal: return "optimal";
        case SolveStatus::unbounded: return "unbounded";
        case SolveStatus::infeasible: return "infeasible";
        case SolveStatus::cycle_detected: return "cycle_detected";
        case SolveStatus::iteration_limit: return "iteration_limit";
    }
    return "?";
}

struct SolveOutcome {
    SolveStatus status = SolveStatus::infeasible;
    RationalVector x;  // filled when optimal
    Rational value;
    PivotTrace trace;         // phase II
    PivotTrace phase1_trace;  // auxiliary problem, empty when no artificials were needed
    Basis basis;              // last basis visited
    Basis reference_basis;    // B0, fixed after phase I
    /// Objective (same convention as PivotEvent::objective) at the last basis.
    GrossNumber final_objective;
};

struct ReducedCosts {
    std::vector<std::size_t> nonbasic;  // ascending column indices
    RationalVector values;              // aligned with nonbasic
    RationalVector pi;                  // simplex multipliers A_B^-T c_B
};

// ---------------------------------------------------------------------------

namespace detail {

inline void check_basis(const LpStandardForm& lp, std::span<const std::size_t> basis) {
    if (basis.size() != lp.m()) throw invalid_problem("basis size differs from row count");
    for (auto j : basis)
        if (j >= lp.n()) throw invalid_problem("basis column out of range");
}

inline RationalMatrix basis_inverse(const LpStandardForm& lp, std::span<const std::size_t> basis) {
    check_basis(lp, basis);
    return inverse(lp.A.columns(basis));
}

/// Per-iteration quantities derived from one basis.
struct Tableau {
    RationalMatrix inv;       // A_B^-1
    RationalVector x_basic;   // A_B^-1 b
    RationalMatrix ref_cols;  // A_B^-1 A_B0 (empty when no reference basis)

    Tableau(const LpStandardForm& lp, std::span<const std::size_t> basis, std::span<const std::size_t> b0)
        : inv(basis_inverse(lp, basis)), x_basic(inv * lp.b) {
        if (!b0.empty()) ref_cols = inv * lp.A.columns(b0);
    }

    [[nodiscard]] RationalVector column(const LpStandardForm& lp, std::size_t j) const { return inv * lp.A.column(j); }

    /// B^-1 b + (B^-1 A_B0) e with e = (G^-1, ..., G^-m).
    [[nodiscard]] GrossVector perturbed_rhs() const {
        const std::size_t m = x_basic.size();
        GrossVector out(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::vector<GrossNumber::Term> terms;
            terms.push_back({0, x_basic[i]});
            for (std::size_t k = 0; k < ref_cols.cols(); ++k)
                terms.push_back({-static_cast<long>(k + 1), ref_cols(i, k)});
            out[i] = GrossNumber::make(std::move(terms));
        }
        return out;
    }
};

inline ReducedCosts reduced_costs(const LpStandardForm& lp, std::span<const std::size_t> basis,
                                  const RationalMatrix& inv) {
    RationalVector c_b(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) c_b[k] = lp.c[basis[k]];
    ReducedCosts out;
    out.pi = inv.transposed() * c_b;
    std::vector<bool> in_basis(lp.n(), false);
    for (auto j : basis) in_basis[j] = true;
    for (std::size_t j = 0; j < lp.n(); ++j) {
        if (in_basis[j]) continue;
        Rational r = lp.c[j];
        for (std::size_t i = 0; i < lp.m(); ++i) r -= lp.A(i, j) * out.pi[i];
        out.nonbasic.push_back(j);
        out.values.push_back(r);
    }
    return out;
}

inline std::optional<std::size_t> plain_row(const RationalVector& x_basic, const RationalVector& col) {
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (sgn(col[i]) <= 0) continue;
        Rational ratio = x_basic[i] / col[i];
        if (!best || ratio < best_ratio) {
            best = i;
            best_ratio = ratio;
        }
    }
    return best;
}

inline std::optional<std::size_t> grossone_row(const GrossVector& perturbed, const RationalVector& col,
                                               const ArithConfig& cfg) {
    std::optional<std::size_t> best;
    GrossNumber best_ratio;
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (sgn(col[i]) <= 0) continue;
        GrossNumber ratio = div(perturbed[i], GrossNumber(col[i]), cfg);
        if (!best) {
            best = i;
            best_ratio = std::move(ratio);
            continue;
        }
        const auto order = ratio <=> best_ratio;
        if (order == 0)
            throw internal_error("two perturbed ratios compare equal (rows " + std::to_string(*best) + " and " +
                                 std::to_string(i) + ")");
        if (order < 0) {
            best = i;
            best_ratio = std::move(ratio);
        }
    }
    return best;
}

inline std::optional<std::size_t> lexicographic_row(const RationalVector& x_basic, const RationalMatrix& ref_cols,
                                                    const RationalVector& col) {
    std::vector<std::size_t> ties;
    for (std::size_t i = 0; i < col.size(); ++i)
        if (sgn(col[i]) > 0) ties.push_back(i);
    if (ties.empty()) return std::nullopt;

    auto narrow = [&](auto&& numerator) {
        std::vector<std::size_t> kept;
        Rational best;
        for (auto i : ties) {
            Rational ratio = numerator(i) / col[i];
            if (kept.empty() || ratio < best) {
                kept.assign(1, i);
                best = ratio;
            } else if (ratio == best) {
                kept.push_back(i);
            }
        }
        ties = std::move(kept);
    };

    narrow([&](std::size_t i) -> const Rational& { return x_basic[i]; });
    for (std::size_t k = 0; ties.size() > 1; ++k) {
        if (k == ref_cols.cols())
            throw internal_error("lexicographic tie-break exhausted every reference column");
        narrow([&](std::size_t i) -> const Rational& { return ref_cols(i, k); });
    }
    return ties.front();
}

inline GrossNumber objective_at(const LpStandardForm& lp, std::span<const std::size_t> basis, const Tableau& t,
                                bool perturbed) {
    GrossNumber acc;
    if (perturbed) {
        const auto rhs = t.perturbed_rhs();
        for (std::size_t k = 0; k < basis.size(); ++k) acc += GrossNumber(lp.c[basis[k]]) * rhs[k];
    } else {
        Rational v(0);
        for (std::size_t k = 0; k < basis.size(); ++k) v += lp.c[basis[k]] * t.x_basic[k];
        acc = GrossNumber(v);
    }
    return acc;
}

struct LoopResult {
    SolveStatus status;
    Basis basis;
    GrossNumber final_objective;
};

/// Steps 0-5 repeated from `basis` until a terminal status.
inline LoopResult run_simplex(const LpStandardForm& lp, Basis basis, const Basis& b0, const EnteringRule& entering,
                              LeavingRule leaving, std::size_t max_iter, const ArithConfig& cfg, PivotTrace& trace);

} // namespace detail

// ---------------------------------------------------------------------------

inline ReducedCosts reduced_costs(const LpStandardForm& lp, const Basis& basis) {
    return detail::reduced_costs(lp, basis, detail::basis_inverse(lp, basis));
}

/// Column to enter, or nothing when every reduced cost is nonnegative.
inline std::optional<std::size_t> choose_entering(const ReducedCosts& costs, const EnteringRule& rule) {
    std::optional<std::size_t> best;  // index into costs.nonbasic
    switch (rule.kind) {
        case EnteringKind::dantzig:
            for (std::size_t k = 0; k < costs.values.size(); ++k)
                if (sgn(costs.values[k]) < 0 && (!best || costs.values[k] < costs.values[*best])) best = k;
            break;
        case EnteringKind::bland:
            for (std::size_t k = 0; k < costs.values.size(); ++k)
                if (sgn(costs.values[k]) < 0) {
                    best = k;
                    break;
                }
            break;
        case EnteringKind::fixed_order: {
            auto rank_of = [&](std::size_t col) {
                auto it = std::find(rule.order.begin(), rule.order.end(), col);
                return it == rule.order.end() ? rule.order.size() + col
                                              : static_cast<std::size_t>(it - rule.order.begin());
            };
            for (std::size_t k = 0; k < costs.values.size(); ++k)
                if (sgn(costs.values[k]) < 0 && (!best || rank_of(costs.nonbasic[k]) < rank_of(costs.nonbasic[*best])))
                    best = k;
            break;
        }
    }
    if (!best) return std::nullopt;
    return costs.nonbasic[*best];
}

/// Minimum-ratio row (basis position); ties go to the smallest position.
/// Empty when the entering column has no positive entry (unbounded).
inline std::optional<std::size_t> ratio_test_plain(const LpStandardForm& lp, const Basis& basis,
                                                   std::size_t entering) {
    detail::Tableau t(lp, basis, {});
    return detail::plain_row(t.x_basic, t.column(lp, entering));
}

/// The perturbed right-hand side B^-1 b + (B^-1 A_B0) e.
inline GrossVector perturbed_rhs(const LpStandardForm& lp, const Basis& basis, const Basis& b0) {
    detail::check_basis(lp, b0);
    return detail::Tableau(lp, basis, b0).perturbed_rhs();
}

/// Minimum of the gross-number ratios built from the G-perturbed right-hand side.
inline std::optional<std::size_t> ratio_test_grossone(const LpStandardForm& lp, const Basis& basis, const Basis& b0,
                                                      std::size_t entering, const ArithConfig& cfg = {}) {
    detail::check_basis(lp, b0);
    detail::Tableau t(lp, basis, b0);
    return detail::grossone_row(t.perturbed_rhs(), t.column(lp, entering), cfg);
}

/// Classical lexicographic rule: break ratio ties column by column of B^-1 A_B0.
inline std::optional<std::size_t> ratio_test_lexicographic(const LpStandardForm& lp, const Basis& basis,
                                                           const Basis& b0, std::size_t entering) {
    detail::check_basis(lp, b0);
    detail::Tableau t(lp, basis, b0);
    return detail::lexicographic_row(t.x_basic, t.ref_cols, t.column(lp, entering));
}

inline detail::LoopResult detail::run_simplex(const LpStandardForm& lp, Basis basis, const Basis& b0,
                                              const EnteringRule& entering, LeavingRule leaving,
                                              std::size_t max_iter, const ArithConfig& cfg, PivotTrace& trace) {
    const bool perturbed = leaving != LeavingRule::plain;
    std::set<Basis> visited;
    for (std::size_t iter = 0;; ++iter) {
        Tableau t(lp, basis, perturbed ? std::span<const std::size_t>(b0) : std::span<const std::size_t>());
        auto objective = objective_at(lp, basis, t, perturbed);
        if (!visited.insert(basis).second) return {SolveStatus::cycle_detected, basis, objective};

        const auto costs = detail::reduced_costs(lp, basis, t.inv);
        const auto enter = choose_entering(costs, entering);
        if (!enter) return {SolveStatus::optimal, basis, objective};
        if (iter >= max_iter) return {SolveStatus::iteration_limit, basis, objective};

        const auto col = t.column(lp, *enter);
        std::optional<std::size_t> row;
        switch (leaving) {
            case LeavingRule::plain: row = plain_row(t.x_basic, col); break;
            case LeavingRule::grossone: row = grossone_row(t.perturbed_rhs(), col, cfg); break;
            case LeavingRule::lexicographic: row = lexicographic_row(t.x_basic, t.ref_cols, col); break;
        }
        if (!row) return {SolveStatus::unbounded, basis, objective};

        trace.events.push_back({iter + 1, basis, *enter, basis[*row], std::move(objective)});
        basis[*row] = *enter;
    }
}

struct Phase1Result {
    SolveStatus status;  // optimal means a feasible basis was found
    Basis basis;
    PivotTrace trace;
};

/// Finds a feasible ordered basis via an auxiliary problem with artificial
/// columns for every row not already covered by a unit column.
///
/// The auxiliary problem runs with an anti-cycling leaving rule (grossone unless
/// lexicographic is requested). Artificial columns left at zero level are pivoted
/// out afterwards; a row where that is impossible means rank(A) < m.
inline Phase1Result phase1(const LpStandardForm& lp, const EnteringRule& entering = EnteringRule::dantzig(),
                           LeavingRule leaving = LeavingRule::grossone, std::size_t max_iter = 10000,
                           const ArithConfig& cfg = {}) {
    lp.validate();
    if (leaving == LeavingRule::plain) leaving = LeavingRule::grossone;
    const std::size_t m = lp.m();
    const std::size_t n = lp.n();

    LpStandardForm flipped = lp;
    for (std::size_t i = 0; i < m; ++i)
        if (sgn(flipped.b[i]) < 0) {
            flipped.b[i] = -flipped.b[i];
            for (std::size_t j = 0; j < n; ++j) flipped.A(i, j) = -flipped.A(i, j);
        }

    // Unit columns already present.
    std::vector<std::optional<std::size_t>> cover(m);
    for (std::size_t j = 0; j < n; ++j) {
        std::optional<std::size_t> row;
        bool unit = true;
        for (std::size_t i = 0; i < m && unit; ++i) {
            if (sgn(flipped.A(i, j)) == 0) continue;
            if (flipped.A(i, j) == 1 && !row) row = i;
            else unit = false;
        }
        if (unit && row && !cover[*row]) cover[*row] = j;
    }

    std::vector<std::size_t> uncovered;
    for (std::size_t i = 0; i < m; ++i)
        if (!cover[i]) uncovered.push_back(i);

    Phase1Result result{SolveStatus::optimal, {}, {}};
    if (uncovered.empty()) {
        for (std::size_t i = 0; i < m; ++i) result.basis.push_back(*cover[i]);
        return result;
    }

    const std::size_t n_aux = n + uncovered.size();
    LpStandardForm aux{RationalMatrix(m, n_aux), flipped.b, RationalVector(n_aux, Rational(0))};
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) aux.A(i, j) = flipped.A(i, j);
    Basis basis(m);
    for (std::size_t k = 0; k < uncovered.size(); ++k) {
        aux.A(uncovered[k], n + k) = 1;
        aux.c[n + k] = 1;
        basis[uncovered[k]] = n + k;
    }
    for (std::size_t i = 0; i < m; ++i)
        if (cover[i]) basis[i] = *cover[i];

    EnteringRule aux_entering = entering;
    for (std::size_t k = 0; k < uncovered.size(); ++k) aux_entering.order.push_back(n + k);

    const Basis aux_b0 = basis;
    auto loop = detail::run_simplex(aux, basis, aux_b0, aux_entering, leaving, max_iter, cfg, result.trace);
    if (loop.status != SolveStatus::optimal) {
        result.status = loop.status;
        return result;
    }
    basis = loop.basis;
    detail::Tableau t(aux, basis, {});
    Rational aux_value(0);
    for (std::size_t k = 0; k < m; ++k) aux_value += aux.c[basis[k]] * t.x_basic[k];
    if (sgn(aux_value) > 0) {
        result.status = SolveStatus::infeasible;
        return result;
    }

    // Degenerate pivots to move zero-level artificials out of the basis.
    for (std::size_t s = 0; s < m; ++s) {
        if (basis[s] < n) continue;
        detail::Tableau cur(aux, basis, {});
        std::optional<std::size_t> replacement;
        for (std::size_t j = 0; j < n && !replacement; ++j) {
            if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
            Rational entry(0);
            for (std::size_t i = 0; i < m; ++i) entry += cur.inv(s, i) * aux.A(i, j);
            if (sgn(entry) != 0) replacement = j;
        }
        if (!replacement) throw invalid_problem("constraint matrix is rank deficient (redundant row)");
        basis[s] = *replacement;
    }
    result.basis = std::move(basis);
    return result;
}

/// Full two-phase primal simplex. B0 is the phase-I terminal basis.
inline SolveOutcome solve(const LpStandardForm& lp, const EnteringRule& entering, LeavingRule leaving,
                          std::size_t max_iter = 10000, const ArithConfig& cfg = {}) {
    cfg.validate();
    SolveOutcome out;
    auto start = phase1(lp, entering, leaving, max_iter, cfg);
    out.phase1_trace = std::move(start.trace);
    if (start.status != SolveStatus::optimal) {
        out.status = start.status == SolveStatus::unbounded ? SolveStatus::infeasible : start.status;
        return out;
    }
    out.reference_basis = start.basis;
    auto loop = detail::run_simplex(lp, start.basis, out.reference_basis, entering, leaving, max_iter, cfg, out.trace);
    out.status = loop.status;
    out.basis = loop.basis;
    out.final_objective = std::move(loop.final_objective);
    if (out.status == SolveStatus::optimal) {
        detail::Tableau t(lp, out.basis, {});
        out.x.assign(lp.n(), Rational(0));
        for (std::size_t k = 0; k < lp.m(); ++k) out.x[out.basis[k]] = t.x_basic[k];
        out.value = dot(lp.c, out.x);
    }
    return out;
}

/// Checks A x = b, x >= 0 and nonnegative reduced costs at the final basis.
inline bool certifies_optimal(const LpStandardForm& lp, const SolveOutcome& outcome) {
    if (outcome.status != SolveStatus::optimal || outcome.x.size() != lp.n()) return false;
    for (const auto& xi : outcome.x)
        if (sgn(xi) < 0) return false;
    if (lp.A * outcome.x != lp.b) return false;
    for (std::size_t j = 0; j < lp.n(); ++j)
        if (sgn(outcome.x[j]) != 0 && std::find(outcome.basis.begin(), outcome.basis.end(), j) == outcome.basis.end())
            return false;
    for (const auto& r : reduced_costs(lp, outcome.basis).values)
        if (sgn(r) < 0) return false;
    return dot(lp.c, outcome.x) == outcome.value;
}

struct VertexOracleResult {
    bool feasible = false;
    Rational value;
    RationalVector x;
};

/// Brute force over every m-subset of columns. Valid for bounded feasible problems.
inline VertexOracleResult enumerate_vertices_oracle(const LpStandardForm& lp) {
    lp.validate();
    const std::size_t m = lp.m();
    const std::size_t n = lp.n();
    VertexOracleResult best;
    std::vector<std::size_t> subset(m);
    std::iota(subset.begin(), subset.end(), std::size_t{0});
    while (true) {
        const auto sub = lp.A.columns(subset);
        if (rank(sub) == m) {
            const auto xb = solve(sub, lp.b);
            if (std::all_of(xb.begin(), xb.end(), [](const Rational& v) { return sgn(v) >= 0; })) {
                RationalVector x(n, Rational(0));
                for (std::size_t k = 0; k < m; ++k) x[subset[k]] = xb[k];
                Rational value = dot(lp.c, x);
                if (!best.feasible || value < best.value) best = {true, value, x};
            }
        }
        // next combination in lexicographic order
        std::size_t k = m;
        while (k > 0 && subset[k - 1] == n - m + k - 1) --k;
        if (k == 0) break;
        ++subset[k - 1];
        for (std::size_t i = k; i < m; ++i) subset[i] = subset[i - 1] + 1;
    }
    return best;
}

} // namespace grossone::lp
