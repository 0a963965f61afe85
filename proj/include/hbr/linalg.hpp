#pragma once

#include "hbr/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hbr {

using RatVec = std::vector<Rational>;

// Dense rational matrix, row-major, dimensions fixed at construction.
class RatMat {
public:
    RatMat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    RatMat(std::size_t rows, std::size_t cols, std::vector<Rational> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw std::invalid_argument("RatMat: data size does not match dimensions");
    }

    static RatMat identity(std::size_t n) {
        RatMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RatMat transposed() const {
        RatMat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const RatMat& a, const RatMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> data_;
};

inline RatVec mat_vec(const RatMat& m, const RatVec& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("mat_vec: dimension mismatch");
    RatVec out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational acc;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

inline RatVec vec_mat(const RatVec& v, const RatMat& m) {
    if (v.size() != m.rows()) throw std::invalid_argument("vec_mat: dimension mismatch");
    RatVec out(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational acc;
        for (std::size_t i = 0; i < m.rows(); ++i) acc += v[i] * m(i, j);
        out[j] = acc;
    }
    return out;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational acc;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

namespace detail {

// Clears each row of [M | extra] to integers. Returns the row multipliers so
// callers can undo the scaling.
struct IntegerRows {
    std::vector<std::vector<BigInt>> w;  // n x (n + extra_cols)
    std::vector<Rational> row_scale;     // row r of w equals row_scale[r] * original row
};

inline IntegerRows clear_denominators(const RatMat& m, const RatVec* rhs) {
    const std::size_t n = m.rows();
    const std::size_t cols = m.cols() + (rhs ? 1 : 0);
    IntegerRows out;
    out.w.assign(n, std::vector<BigInt>(cols));
    out.row_scale.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).den());
        if (rhs) l = lcm(l, (*rhs)[i].den());
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.w[i][j] = m(i, j).num() * (l / m(i, j).den());
        if (rhs) out.w[i][m.cols()] = (*rhs)[i].num() * (l / (*rhs)[i].den());
        out.row_scale[i] = Rational(l);
    }
    return out;
}

// Bareiss fraction-free forward elimination in place. Returns the permutation
// sign, or 0 if the matrix is rank deficient in the first n columns.
inline int bareiss_forward(std::vector<std::vector<BigInt>>& w, std::size_t n) {
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 <= n; ++k) {
        std::size_t piv = k;
        while (piv < n && w[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(w[piv], w[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < w[i].size(); ++j) {
                BigInt t = w[k][k] * w[i][j] - w[i][k] * w[k][j];
                w[i][j] = t / prev;  // divides exactly (Bareiss identity)
            }
            w[i][k] = 0;
        }
        prev = w[k][k];
    }
    return sign;
}

}  // namespace detail

// Exact determinant via fraction-free (Bareiss) elimination.
inline Rational determinant(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    auto ir = detail::clear_denominators(m, nullptr);
    int sign = detail::bareiss_forward(ir.w, n);
    if (sign == 0) return Rational(0);
    Rational det(ir.w[n - 1][n - 1]);
    if (sign < 0) det = -det;
    for (const auto& s : ir.row_scale) det /= s;
    return det;
}

// Exact solve of M x = b. Returns nullopt when M is singular. The solution is
// verified by back-substitution before returning.
inline std::optional<RatVec> solve_linear_system(const RatMat& m, const RatVec& b) {
    if (m.rows() != m.cols()) throw std::invalid_argument("solve_linear_system: matrix not square");
    if (b.size() != m.rows()) throw std::invalid_argument("solve_linear_system: rhs dimension mismatch");
    const std::size_t n = m.rows();
    auto ir = detail::clear_denominators(m, &b);
    if (detail::bareiss_forward(ir.w, n) == 0) return std::nullopt;
    RatVec x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc(ir.w[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) acc -= Rational(ir.w[i][j]) * x[j];
        x[i] = acc / Rational(ir.w[i][i]);
    }
    if (mat_vec(m, x) != b)
        throw std::logic_error("solve_linear_system: back-substitution check failed");
    return x;
}

// Exact inverse by Gauss-Jordan; nullopt when singular.
inline std::optional<RatMat> inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
    const std::size_t n = m.rows();
    RatMat a = m;
    RatMat inv = RatMat::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        Rational p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            Rational f = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline Rational frobenius_norm_squared(const RatMat& m) {
    Rational acc;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * m(i, j);
    return acc;
}

}  // namespace hbr
