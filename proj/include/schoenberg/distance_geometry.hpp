#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schoenberg/distributions.hpp"
#include "schoenberg/eigen.hpp"
#include "schoenberg/errors.hpp"
#include "schoenberg/matrix.hpp"

namespace schoenberg {

/// Ingested entries below -kDistanceClampTol are errors; within
/// [-kDistanceClampTol, 0) they are treated as round-off and clamped to 0.
inline constexpr double kDistanceClampTol = 1e-12;

/// Matrix of squared distances between n objects: symmetric, nonnegative,
/// zero diagonal. Construction from coordinates guarantees the Euclidean
/// (c.n.d.) property; raw ingestion validates shape eagerly and offers the
/// c.n.d. check opt-in, since it costs a full eigendecomposition.
class SquaredDistanceMatrix {
public:
    /// D_ij = sum_alpha (x_i,alpha - x_j,alpha)^2 from n x p coordinates.
    static SquaredDistanceMatrix from_coordinates(const Matrix& x) {
        if (x.rows() == 0) throw std::invalid_argument("squared distances: no points");
        const std::size_t n = x.rows();
        SymmetricMatrix d(n);
        for (std::size_t i = 0; i < n; ++i) {
            auto xi = x.row(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                auto xj = x.row(j);
                double s = 0.0;
                for (std::size_t c = 0; c < x.cols(); ++c) {
                    const double diff = xi[c] - xj[c];
                    s += diff * diff;
                }
                d.set(i, j, s);
            }
        }
        return SquaredDistanceMatrix(std::move(d));
    }

    /// Validates symmetry, zero diagonal and nonnegativity of a raw square
    /// matrix. When check_cnd is set, additionally verifies that the matrix
    /// is conditionally negative definite and throws NotEuclideanError
    /// otherwise.
    static SquaredDistanceMatrix from_raw(const Matrix& m, bool check_cnd = false,
                                          double tol = kEigenRelTol) {
        SymmetricMatrix s = SymmetricMatrix::checked(m);
        const std::size_t n = s.order();
        for (std::size_t i = 0; i < n; ++i) {
            if (std::fabs(s(i, i)) > kDistanceClampTol)
                throw std::invalid_argument("distance matrix: diagonal entry (" +
                                            std::to_string(i + 1) + "," + std::to_string(i + 1) +
                                            ") is " + std::to_string(s(i, i)) + ", expected 0");
            s.set(i, i, 0.0);
            for (std::size_t j = i + 1; j < n; ++j) {
                const double v = s(i, j);
                if (v < -kDistanceClampTol)
                    throw std::invalid_argument("distance matrix: negative entry " +
                                                std::to_string(v) + " at (" +
                                                std::to_string(i + 1) + "," +
                                                std::to_string(j + 1) + ")");
                if (v < 0.0) s.set(i, j, 0.0);
            }
        }
        SquaredDistanceMatrix d(std::move(s));
        if (check_cnd) {
            const EigenSystem sys = decompose(detail::uniform_double_centering(d.symmetric()));
            const double lambda_max = std::max(std::fabs(sys.eigenvalues.front()),
                                               std::fabs(sys.eigenvalues.back()));
            if (sys.eigenvalues.back() < -tol * std::max(1.0, lambda_max))
                throw NotEuclideanError(
                    "distance matrix is not conditionally negative definite: centered "
                    "eigenvalue " + std::to_string(sys.eigenvalues.back()),
                    sys.eigenvalues.back());
        }
        return d;
    }

    std::size_t order() const { return d_.order(); }
    double operator()(std::size_t i, std::size_t j) const { return d_(i, j); }
    const SymmetricMatrix& symmetric() const { return d_; }

private:
    explicit SquaredDistanceMatrix(SymmetricMatrix d) : d_(std::move(d)) {}

    friend SquaredDistanceMatrix make_squared_distance_matrix_unchecked(SymmetricMatrix d);

    SymmetricMatrix d_;
};

/// Internal fast path for values already known to be symmetric, nonnegative
/// and zero-diagonal (elementwise transforms of an existing matrix).
inline SquaredDistanceMatrix make_squared_distance_matrix_unchecked(SymmetricMatrix d) {
    return SquaredDistanceMatrix(std::move(d));
}

namespace detail {

inline void require_same_order(std::size_t order, std::size_t dist, const char* op) {
    if (order != dist)
        throw std::invalid_argument(std::string(op) + ": matrix order " + std::to_string(order) +
                                    " does not match distribution length " +
                                    std::to_string(dist));
}

}  // namespace detail

/// Centering matrix H(a) = I - 1 a', entry (i,j) = delta_ij - a_j.
/// Rows sum to zero; generally not symmetric.
inline Matrix centering_matrix(const SignedDistribution& a) {
    const std::size_t n = a.size();
    Matrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = (i == j ? 1.0 : 0.0) - a[j];
    return h;
}

/// Scalar products seen from the a-barycenter: B(a) = -1/2 H(a) C H'(a),
/// evaluated through b_ij = -1/2 (c_ij - s_i - s_j + t) with s = Ca and
/// t = a'Ca, which is exactly symmetric and O(n^2).
inline SymmetricMatrix scalar_products(const SymmetricMatrix& c, const SignedDistribution& a) {
    detail::require_same_order(c.order(), a.size(), "scalar products");
    const std::size_t n = c.order();
    std::vector<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += c(i, j) * a[j];
        s[i] = acc;
    }
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += a[i] * s[i];

    SymmetricMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) b.set(i, j, -0.5 * (c(i, j) - s[i] - s[j] + t));
    return b;
}

/// Zero-diagonal associate of a symmetric matrix:
/// c_ij - c_ii / 2 - c_jj / 2. Idempotent on zero-diagonal input.
inline SymmetricMatrix zero_diagonal_associate(const SymmetricMatrix& c) {
    const std::size_t n = c.order();
    SymmetricMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            out.set(i, j, c(i, j) - 0.5 * c(i, i) - 0.5 * c(j, j));
    return out;
}

/// Dispersion of the cloud under a: 1/2 sum_ij a_i a_j D_ij. Nonnegative for
/// nonnegative distributions, possibly negative for signed ones.
inline double dispersion(const SquaredDistanceMatrix& d, const SignedDistribution& a) {
    detail::require_same_order(d.order(), a.size(), "dispersion");
    const std::size_t n = d.order();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += a[j] * d(i, j);
        acc += a[i] * row;
    }
    return 0.5 * acc;
}

/// Squared distances from each object to the a-barycenter, by the Huygens
/// decomposition: D_ia = sum_j a_j D_ij - dispersion.
inline std::vector<double> distances_to_barycenter(const SquaredDistanceMatrix& d,
                                                   const SignedDistribution& a) {
    detail::require_same_order(d.order(), a.size(), "distances to barycenter");
    const std::size_t n = d.order();
    std::vector<double> out(n, 0.0);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += a[j] * d(i, j);
        out[i] = row;
        delta += a[i] * row;
    }
    delta *= 0.5;
    for (double& v : out) v -= delta;
    return out;
}

/// Squared distance between the a- and b-barycenters:
/// -1/2 sum_ij (a_i - b_i)(a_j - b_j) D_ij.
inline double barycenter_squared_distance(const SquaredDistanceMatrix& d,
                                          const SignedDistribution& a,
                                          const SignedDistribution& b) {
    detail::require_same_order(d.order(), a.size(), "barycenter distance");
    detail::require_same_order(d.order(), b.size(), "barycenter distance");
    const std::size_t n = d.order();
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double zi = a[i] - b[i];
        if (zi == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += (a[j] - b[j]) * d(i, j);
        acc += zi * row;
    }
    return -0.5 * acc;
}

}  // namespace schoenberg
