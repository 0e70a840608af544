#pragma once

// Dense matrices: exact Gaussian elimination over Q(i), SVD-based numerical
// rank for the floating mode.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <limits>
#include <vector>

#include "severi/modular.hpp"
#include "severi/scalar.hpp"

namespace severi {

template <ScalarField S>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, from_int<S>(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    S& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const S& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    Matrix<Complex> to_float() const {
        Matrix<Complex> m(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) m(r, c) = to_complex((*this)(r, c));
        return m;
    }

    std::vector<S> apply(const std::vector<S>& x) const {
        if (x.size() != cols_) throw Error("matrix-vector size mismatch");
        std::vector<S> y(rows_, from_int<S>(0));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!is_zero((*this)(r, c)) && !is_zero(x[c])) y[r] += (*this)(r, c) * x[c];
        return y;
    }

    Matrix select_columns(const std::vector<std::size_t>& keep) const {
        Matrix m(rows_, keep.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < keep.size(); ++c) m(r, c) = (*this)(r, keep[c]);
        return m;
    }

    Matrix permuted(const std::vector<std::size_t>& row_order, const std::vector<std::size_t>& col_order) const {
        Matrix m(row_order.size(), col_order.size());
        for (std::size_t r = 0; r < row_order.size(); ++r)
            for (std::size_t c = 0; c < col_order.size(); ++c) m(r, c) = (*this)(row_order[r], col_order[c]);
        return m;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> a_;
};

using ExactMatrix = Matrix<QComplex>;

/// Reduced row echelon form over Q(i).
struct RowEchelon {
    ExactMatrix reduced;
    std::vector<std::size_t> pivot_columns;
    std::size_t rank() const { return pivot_columns.size(); }
};

inline RowEchelon row_reduce(ExactMatrix m) {
    RowEchelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
        QComplex inv = QComplex(1) / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c)
            if (!m(row, c).is_zero()) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m(r, col).is_zero()) continue;
            QComplex f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
        }
        out.pivot_columns.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

/// Rank by forward elimination only (cheaper than a full RREF).
inline std::size_t exact_rank(ExactMatrix m) {
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
        for (std::size_t r = row + 1; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) continue;
            QComplex f = m(r, col) / m(row, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                if (!m(row, c).is_zero()) m(r, c) -= f * m(row, c);
        }
        ++row;
    }
    return row;
}

/// Rank of the image of m in F_p. A lower bound for the rank over Q(i);
/// nullopt when some denominator vanishes mod p.
inline std::optional<std::size_t> modular_rank(const ExactMatrix& m, const GaussianPrime& gp) {
    const std::uint64_t p = gp.p;
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            auto re = detail::reduce_mod(m(r, c).re, p), im = detail::reduce_mod(m(r, c).im, p);
            if (!re || !im) return std::nullopt;
            a[r][c] = (*re + *im * gp.root) % p;
        }
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && a[piv][col] == 0) ++piv;
        if (piv == m.rows()) continue;
        std::swap(a[piv], a[row]);
        const std::uint64_t inv = detail::pow_mod(a[row][col], p - 2, p);
        for (std::size_t r = row + 1; r < m.rows(); ++r) {
            if (a[r][col] == 0) continue;
            const std::uint64_t f = a[r][col] * inv % p;
            for (std::size_t c = col; c < m.cols(); ++c) a[r][c] = (a[r][c] + (p - f) * a[row][c]) % p;
        }
        ++row;
    }
    return row;
}

/// Basis of the right kernel, one vector per free column.
inline std::vector<std::vector<QComplex>> kernel_basis(const ExactMatrix& m) {
    RowEchelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivot_columns) is_pivot[c] = true;
    std::vector<std::vector<QComplex>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<QComplex> v(m.cols(), QComplex(0));
        v[free] = QComplex(1);
        for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) v[e.pivot_columns[r]] = -e.reduced(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

inline QComplex determinant(ExactMatrix m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    QComplex det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) return QComplex(0);
        if (piv != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(m(piv, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m(r, col).is_zero()) continue;
            QComplex f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c)
                if (!m(col, c).is_zero()) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

inline Eigen::MatrixXcd to_eigen(const Matrix<Complex>& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
    return e;
}

inline Complex determinant(const Matrix<Complex>& m) {
    if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
    if (m.rows() == 0) return {1.0, 0.0};
    return to_eigen(m).partialPivLu().determinant();
}

/// Singular values, descending.
inline std::vector<double> singular_values(const Matrix<Complex>& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    const auto& s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

}  // namespace severi
