#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schoenberg {

/// Dense row-major matrix of doubles. Deliberately small: only the
/// operations the library needs, no expression templates.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    bool empty() const { return data_.empty(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product: inner dimensions disagree (" +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + ")");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline std::vector<double> operator*(const Matrix& a, const std::vector<double>& x) {
    if (a.cols() != x.size())
        throw std::invalid_argument("matrix-vector product: dimensions disagree");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        auto r = a.row(i);
        for (std::size_t j = 0; j < x.size(); ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline double max_abs(const Matrix& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j)));
    return m;
}

/// Symmetric matrix with full storage. Symmetry is exact by construction:
/// every write path mirrors, and the factories symmetrize or reject.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(std::size_t order) : m_(order, order) {
        if (order == 0) throw std::invalid_argument("symmetric matrix: order must be positive");
    }

    /// Builds from a square matrix, averaging (m + m') / 2 so that the
    /// stored entries are exactly symmetric.
    static SymmetricMatrix symmetrized(const Matrix& m) {
        require_square(m);
        SymmetricMatrix s(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) {
            s.m_(i, i) = m(i, i);
            for (std::size_t j = i + 1; j < m.cols(); ++j) {
                const double v = 0.5 * (m(i, j) + m(j, i));
                s.m_(i, j) = v;
                s.m_(j, i) = v;
            }
        }
        return s;
    }

    /// Builds from a square matrix that must already be symmetric within
    /// rel_tol relative to its largest entry; the result is symmetrized
    /// exactly. Intended for ingested data.
    static SymmetricMatrix checked(const Matrix& m, double rel_tol = 1e-9) {
        require_square(m);
        const double scale = std::max(1.0, max_abs(m));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = i + 1; j < m.cols(); ++j)
                if (std::fabs(m(i, j) - m(j, i)) > rel_tol * scale)
                    throw std::invalid_argument(
                        "matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                        std::to_string(j + 1) + "): " + std::to_string(m(i, j)) + " vs " +
                        std::to_string(m(j, i)));
        return symmetrized(m);
    }

    std::size_t order() const { return m_.rows(); }

    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    void set(std::size_t i, std::size_t j, double v) {
        m_(i, j) = v;
        m_(j, i) = v;
    }

    const Matrix& full() const { return m_; }

private:
    static void require_square(const Matrix& m) {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw std::invalid_argument("expected a nonempty square matrix, got " +
                                        std::to_string(m.rows()) + "x" +
                                        std::to_string(m.cols()));
    }

    Matrix m_;
};

}  // namespace schoenberg
