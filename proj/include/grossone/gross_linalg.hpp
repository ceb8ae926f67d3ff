#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grossone/errors.hpp"
#include "grossone/gross_number.hpp"

namespace grossone {

/// Dense fixed-length vector of gross-numbers.
template <class Digit>
class BasicGrossVector {
public:
    using value_type = BasicGross<Digit>;

    BasicGrossVector() = default;
    explicit BasicGrossVector(std::size_t n) : entries_(n) {}
    BasicGrossVector(std::initializer_list<value_type> init) : entries_(init) {}
    explicit BasicGrossVector(std::vector<value_type> entries) : entries_(std::move(entries)) {}

    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    value_type& operator[](std::size_t i) { return entries_[i]; }
    const value_type& operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] std::span<const value_type> entries() const noexcept { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    friend bool operator==(const BasicGrossVector&, const BasicGrossVector&) = default;

    friend BasicGrossVector operator+(const BasicGrossVector& a, const BasicGrossVector& b) {
        if (a.size() != b.size()) throw shape_mismatch("vector lengths differ");
        BasicGrossVector out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
        return out;
    }
    friend BasicGrossVector operator-(const BasicGrossVector& a, const BasicGrossVector& b) {
        if (a.size() != b.size()) throw shape_mismatch("vector lengths differ");
        BasicGrossVector out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
        return out;
    }

    /// Highest grosspower over all entries; empty when every entry is zero.
    [[nodiscard]] std::optional<long> leading_power() const {
        std::optional<long> best;
        for (const auto& e : entries_)
            if (auto p = e.leading_power(); p && (!best || *p > *best)) best = p;
        return best;
    }

private:
    std::vector<value_type> entries_;
};

/// Dense row-major rows x cols matrix of gross-numbers.
template <class Digit>
class BasicGrossMatrix {
public:
    using value_type = BasicGross<Digit>;

    BasicGrossMatrix() = default;
    BasicGrossMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
    BasicGrossMatrix(std::initializer_list<std::initializer_list<value_type>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        for (const auto& row : init) {
            if (row.size() != cols_) throw shape_mismatch("ragged matrix initializer");
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static BasicGrossMatrix identity(std::size_t n) {
        BasicGrossMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = value_type(Digit(1));
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    value_type& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    [[nodiscard]] std::optional<long> leading_power() const {
        std::optional<long> best;
        for (const auto& e : entries_)
            if (auto p = e.leading_power(); p && (!best || *p > *best)) best = p;
        return best;
    }

    friend bool operator==(const BasicGrossMatrix&, const BasicGrossMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> entries_;
};

using GrossVector = BasicGrossVector<Rational>;
using GrossMatrix = BasicGrossMatrix<Rational>;

/// Exact product M * v (no truncation).
template <class Digit>
BasicGrossVector<Digit> matvec(const BasicGrossMatrix<Digit>& m, const BasicGrossVector<Digit>& v) {
    if (m.cols() != v.size())
        throw shape_mismatch("matvec: " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             " matrix times vector of length " + std::to_string(v.size()));
    BasicGrossVector<Digit> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BasicGross<Digit> acc;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero() && !v[j].is_zero()) acc += m(i, j) * v[j];
        out[i] = std::move(acc);
    }
    return out;
}

namespace detail {

// Higher leading grosspower wins, then larger |leading digit|.
template <class Digit>
bool dominates(const BasicGross<Digit>& a, const BasicGross<Digit>& b) {
    if (a.is_zero()) return false;
    if (b.is_zero()) return true;
    const auto& ta = a.terms().front();
    const auto& tb = b.terms().front();
    if (ta.power != tb.power) return ta.power > tb.power;
    return digit_traits<Digit>::abs(ta.digit) > digit_traits<Digit>::abs(tb.digit);
}

template <class Digit>
BasicGrossVector<Digit> eliminate(BasicGrossMatrix<Digit> a, BasicGrossVector<Digit> rhs, const ArithConfig& cfg,
                                  long floor) {
    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (dominates(a(i, k), a(pivot, k))) pivot = i;
        if (a(pivot, k).is_zero()) throw singular_matrix("no nonzero pivot in column " + std::to_string(k));
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            std::swap(rhs[k], rhs[pivot]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (a(i, k).is_zero()) continue;
            const auto factor = div(a(i, k), a(k, k), cfg);
            for (std::size_t j = k + 1; j < n; ++j)
                if (!a(k, j).is_zero()) a(i, j) = (a(i, j) - factor * a(k, j)).chopped(cfg.float_zero_tol);
            rhs[i] = (rhs[i] - factor * rhs[k]).chopped(cfg.float_zero_tol);
            a(i, k) = {};
        }
    }
    BasicGrossVector<Digit> x(n);
    for (std::size_t k = n; k-- > 0;) {
        auto acc = rhs[k];
        for (std::size_t j = k + 1; j < n; ++j)
            if (!a(k, j).is_zero() && !x[j].is_zero()) acc -= a(k, j) * x[j];
        x[k] = div(acc, a(k, k), cfg).truncated(floor);
    }
    return x;
}

template <class Digit>
bool residual_within(const BasicGrossVector<Digit>& r, long target) {
    for (const auto& e : r)
        if (auto p = e.leading_power(); p && *p > target) return false;
    return true;
}

} // namespace detail

/// Solves M x = rhs by Gaussian elimination with order-dominant pivoting,
/// followed by exact-residual refinement.
///
/// On return every entry of M x - rhs has leading grosspower at most
/// `target_power`, which defaults to (highest grosspower in rhs) - K.
/// All-rational systems are solved exactly.
template <class Digit>
BasicGrossVector<Digit> solve_linear(const BasicGrossMatrix<Digit>& m, const BasicGrossVector<Digit>& rhs,
                                     const ArithConfig& cfg = {}, std::optional<long> target_power = std::nullopt) {
    if (m.rows() != m.cols()) throw shape_mismatch("solve_linear needs a square matrix");
    if (m.rows() != rhs.size()) throw shape_mismatch("solve_linear: rhs length does not match matrix");
    const std::size_t n = m.rows();
    const auto rhs_lead = rhs.leading_power();
    if (!rhs_lead) {
        // Still detect singularity for a zero right-hand side.
        detail::eliminate(m, rhs, cfg, 0);
        return BasicGrossVector<Digit>(n);
    }
    const long target = target_power.value_or(*rhs_lead - cfg.truncation_order);
    const auto m_lead = m.leading_power();
    if (!m_lead) throw singular_matrix("zero matrix");
    // Terms of x below this grosspower only touch residual orders <= target.
    const long floor = target - *m_lead + 1;

    auto x = detail::eliminate(m, rhs, cfg, floor);
    if constexpr (!digit_traits<Digit>::exact) return x;

    const int max_rounds = 4 * cfg.truncation_order + 8;
    for (int round = 0; round < max_rounds; ++round) {
        const auto residual = rhs - matvec(m, x);
        if (detail::residual_within(residual, target)) break;
        const auto correction = detail::eliminate(m, residual, cfg, floor);
        for (std::size_t i = 0; i < n; ++i) x[i] = (x[i] + correction[i]).truncated(floor);
    }
    return x;
}

} // namespace grossone
