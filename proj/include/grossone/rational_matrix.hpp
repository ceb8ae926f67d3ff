#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grossone/errors.hpp"
#include "grossone/rational.hpp"

namespace grossone {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        for (const auto& row : init) {
            if (row.size() != cols_) throw shape_mismatch("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] RationalVector column(std::size_t j) const {
        RationalVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    /// Submatrix made of the listed columns, in order.
    [[nodiscard]] RationalMatrix columns(std::span<const std::size_t> idx) const {
        RationalMatrix out(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < idx.size(); ++k) out(i, k) = (*this)(i, idx[k]);
        return out;
    }

    [[nodiscard]] RationalMatrix transposed() const {
        RationalMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

inline RationalVector operator*(const RationalMatrix& m, const RationalVector& v) {
    if (m.cols() != v.size()) throw shape_mismatch("matrix-vector shape mismatch");
    RationalVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational acc(0);
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

inline RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols() != b.rows()) throw shape_mismatch("matrix-matrix shape mismatch");
    RationalMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

inline Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
    if (a.size() != b.size()) throw shape_mismatch("dot: length mismatch");
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// Exact inverse by Gauss-Jordan elimination.
inline RationalMatrix inverse(RationalMatrix a) {
    if (a.rows() != a.cols()) throw shape_mismatch("inverse needs a square matrix");
    const std::size_t n = a.rows();
    RationalMatrix inv = RationalMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && sgn(a(pivot, k)) == 0) ++pivot;
        if (pivot == n) throw singular_matrix("singular matrix (column " + std::to_string(k) + ")");
        if (pivot != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(pivot, j));
                std::swap(inv(k, j), inv(pivot, j));
            }
        const Rational p = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= p;
            inv(k, j) /= p;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || sgn(a(i, k)) == 0) continue;
            const Rational f = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

inline RationalVector solve(const RationalMatrix& a, const RationalVector& b) { return inverse(a) * b; }

/// Exact rank by row reduction.
inline std::size_t rank(RationalMatrix a) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
        std::size_t pivot = r;
        while (pivot < a.rows() && sgn(a(pivot, col)) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(pivot, j));
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (sgn(a(i, col)) == 0) continue;
            const Rational f = a(i, col) / a(r, col);
            for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return r;
}

inline std::string format_vector(std::span<const Rational> v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

} // namespace grossone
