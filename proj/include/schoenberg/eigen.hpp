#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "schoenberg/errors.hpp"
#include "schoenberg/matrix.hpp"

namespace schoenberg {

/// Default relative tolerance separating genuine eigenvalue signs from
/// round-off, relative to the largest absolute eigenvalue.
inline constexpr double kEigenRelTol = 1e-9;

/// Iteration cap of the tridiagonal QL stage, per eigenvalue.
inline constexpr int kEigenIterationCap = 100;

/// Spectral decomposition M = U diag(lambda) U'. Eigenvalues are sorted
/// descending; column alpha of `eigenvectors` pairs with eigenvalue alpha.
struct EigenSystem {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

namespace detail {

// Householder reduction to symmetric tridiagonal form. On entry V holds the
// matrix; on exit V holds the accumulated orthogonal transform, d the
// diagonal and e the subdiagonal (e[0] unused).
inline void householder_tridiagonalize(Matrix& V, std::vector<double>& d,
                                       std::vector<double>& e) {
    const std::size_t n = V.rows();
    for (std::size_t j = 0; j < n; ++j) d[j] = V(n - 1, j);

    for (std::size_t i = n - 1; i > 0; --i) {
        double scale = 0.0, h = 0.0;
        for (std::size_t k = 0; k < i; ++k) scale += std::fabs(d[k]);
        if (scale == 0.0) {
            e[i] = d[i - 1];
            for (std::size_t j = 0; j < i; ++j) {
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
                V(j, i) = 0.0;
            }
        } else {
            for (std::size_t k = 0; k < i; ++k) {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            double f = d[i - 1];
            double g = std::sqrt(h);
            if (f > 0) g = -g;
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for (std::size_t j = 0; j < i; ++j) e[j] = 0.0;

            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                V(j, i) = f;
                g = e[j] + V(j, j) * f;
                for (std::size_t k = j + 1; k < i; ++k) {
                    g += V(k, j) * d[k];
                    e[k] += V(k, j) * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for (std::size_t j = 0; j < i; ++j) {
                e[j] /= h;
                f += e[j] * d[j];
            }
            const double hh = f / (h + h);
            for (std::size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
            for (std::size_t j = 0; j < i; ++j) {
                f = d[j];
                g = e[j];
                for (std::size_t k = j; k < i; ++k) V(k, j) -= f * e[k] + g * d[k];
                d[j] = V(i - 1, j);
                V(i, j) = 0.0;
            }
        }
        d[i] = h;
    }

    // accumulate the transformations
    for (std::size_t i = 0; i + 1 < n; ++i) {
        V(n - 1, i) = V(i, i);
        V(i, i) = 1.0;
        const double h = d[i + 1];
        if (h != 0.0) {
            for (std::size_t k = 0; k <= i; ++k) d[k] = V(k, i + 1) / h;
            for (std::size_t j = 0; j <= i; ++j) {
                double g = 0.0;
                for (std::size_t k = 0; k <= i; ++k) g += V(k, i + 1) * V(k, j);
                for (std::size_t k = 0; k <= i; ++k) V(k, j) -= g * d[k];
            }
        }
        for (std::size_t k = 0; k <= i; ++k) V(k, i + 1) = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) {
        d[j] = V(n - 1, j);
        V(n - 1, j) = 0.0;
    }
    V(n - 1, n - 1) = 1.0;
    e[0] = 0.0;
}

// Implicit-shift QL on the tridiagonal form, accumulating rotations into V.
inline void tridiagonal_ql(Matrix& V, std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = V.rows();
    for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    double f = 0.0, tst1 = 0.0;
    const double eps = std::ldexp(1.0, -52);
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::fabs(d[l]) + std::fabs(e[l]));
        std::size_t m = l;
        while (m < n && std::fabs(e[m]) > eps * tst1) ++m;

        if (m > l) {
            int iter = 0;
            do {
                if (++iter > kEigenIterationCap)
                    throw ConvergenceError(
                        "eigendecomposition of order-" + std::to_string(n) +
                            " matrix did not converge within " +
                            std::to_string(kEigenIterationCap) + " iterations",
                        n);
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double dl1 = d[l + 1];
                double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                p = d[m];
                double c = 1.0, c2 = c, c3 = c;
                const double el1 = e[l + 1];
                double s = 0.0, s2 = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = std::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for (std::size_t k = 0; k < n; ++k) {
                        h = V(k, i + 1);
                        V(k, i + 1) = s * V(k, i) + c * h;
                        V(k, i) = c * V(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
            } while (std::fabs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }
}

}  // namespace detail

/// Eigendecomposition of a symmetric matrix (Householder tridiagonalization
/// followed by implicit-shift QL). Eigenvalues come out descending; each
/// eigenvector column is oriented so its largest-magnitude component is
/// nonnegative, which keeps embeddings reproducible run to run.
inline EigenSystem decompose(const SymmetricMatrix& m) {
    const std::size_t n = m.order();
    if (n == 1) {
        Matrix v(1, 1);
        v(0, 0) = 1.0;
        return {{m(0, 0)}, std::move(v)};
    }

    Matrix v = m.full();
    std::vector<double> d(n), e(n);
    detail::householder_tridiagonalize(v, d, e);
    detail::tridiagonal_ql(v, d, e);

    // descending order, stable among ties
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

    EigenSystem sys;
    sys.eigenvalues.resize(n);
    sys.eigenvectors = Matrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        const std::size_t src = idx[col];
        sys.eigenvalues[col] = d[src];
        std::size_t peak = 0;
        double peak_abs = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = std::fabs(v(i, src));
            if (a > peak_abs) {
                peak_abs = a;
                peak = i;
            }
        }
        const double sign = v(peak, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) sys.eigenvectors(i, col) = sign * v(i, src);
    }
    return sys;
}

/// True iff the minimum eigenvalue is >= -tol * max(1, |lambda|_max).
/// Semi-definite matrices count as positive definite.
inline bool is_pd(const SymmetricMatrix& m, double tol = kEigenRelTol) {
    if (tol < 0) throw std::invalid_argument("is_pd: tolerance must be nonnegative");
    const EigenSystem sys = decompose(m);
    const double lambda_max = std::max(std::fabs(sys.eigenvalues.front()),
                                       std::fabs(sys.eigenvalues.back()));
    return sys.eigenvalues.back() >= -tol * std::max(1.0, lambda_max);
}

namespace detail {

// -1/2 H M H' for the uniform distribution, written out as the classic
// double centering: b_ij = -1/2 (m_ij - rowmean_i - rowmean_j + totalmean).
inline SymmetricMatrix uniform_double_centering(const SymmetricMatrix& m) {
    const std::size_t n = m.order();
    std::vector<double> rowmean(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += m(i, j);
        rowmean[i] = s / static_cast<double>(n);
        total += s;
    }
    total /= static_cast<double>(n) * static_cast<double>(n);

    SymmetricMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            b.set(i, j, -0.5 * (m(i, j) - rowmean[i] - rowmean[j] + total));
    return b;
}

}  // namespace detail

/// True iff m is conditionally negative definite: the quadratic form (z, Mz)
/// is <= 0 on every zero-sum z, tested through the equivalent positivity of
/// the uniformly centered scalar-product matrix.
inline bool is_cnd(const SymmetricMatrix& m, double tol = kEigenRelTol) {
    if (tol < 0) throw std::invalid_argument("is_cnd: tolerance must be nonnegative");
    return is_pd(detail::uniform_double_centering(m), tol);
}

}  // namespace schoenberg
