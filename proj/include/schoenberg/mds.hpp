#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schoenberg/distance_geometry.hpp"
#include "schoenberg/distributions.hpp"
#include "schoenberg/eigen.hpp"
#include "schoenberg/errors.hpp"
#include "schoenberg/matrix.hpp"

namespace schoenberg {

/// Coordinates recovered from a squared distance matrix, together with the
/// spectrum that produced them. Pairwise squared distances of the rows
/// reproduce the input; p <= n-1 since the origin direction is null.
struct Embedding {
    Matrix coordinates;               ///< n x p, column alpha scaled by sqrt(lambda_alpha)
    std::vector<double> eigenvalues;  ///< descending, positive beyond the null-space cutoff
    SignedDistribution origin;
    WeightDistribution weights;       ///< uniform for classical MDS

    std::size_t point_count() const { return coordinates.rows(); }
    std::size_t dimension() const { return coordinates.cols(); }
};

namespace detail {

// Shared spectral step: decompose, reject genuine negatives, drop the
// numerical null space (lambda <= tol * lambda_max).
inline std::pair<EigenSystem, std::size_t> positive_spectrum(const SymmetricMatrix& k,
                                                             double tol, const char* op) {
    EigenSystem sys = decompose(k);
    const double lambda_max = std::max(std::fabs(sys.eigenvalues.front()),
                                       std::fabs(sys.eigenvalues.back()));
    const double cut = tol * std::max(1.0, lambda_max);
    if (sys.eigenvalues.back() < -cut)
        throw NotEuclideanError(std::string(op) + ": input is not a squared Euclidean " +
                                    "distance matrix (eigenvalue " +
                                    std::to_string(sys.eigenvalues.back()) + ")",
                                sys.eigenvalues.back());
    std::size_t kept = 0;
    while (kept < sys.eigenvalues.size() && sys.eigenvalues[kept] > tol * lambda_max) ++kept;
    return {std::move(sys), kept};
}

}  // namespace detail

/// Classical MDS with an arbitrary signed origin: coordinates
/// x_i,alpha = sqrt(lambda_alpha) u_i,alpha from B(a) = -1/2 H(a) D H'(a).
inline Embedding classical_mds(const SquaredDistanceMatrix& d, const SignedDistribution& a,
                               double tol = kEigenRelTol) {
    auto [sys, kept] = detail::positive_spectrum(scalar_products(d.symmetric(), a), tol,
                                                 "classical MDS");
    const std::size_t n = d.order();
    Matrix x(n, kept);
    for (std::size_t alpha = 0; alpha < kept; ++alpha) {
        const double scale = std::sqrt(sys.eigenvalues[alpha]);
        for (std::size_t i = 0; i < n; ++i) x(i, alpha) = scale * sys.eigenvectors(i, alpha);
    }
    sys.eigenvalues.resize(kept);
    return {std::move(x), std::move(sys.eigenvalues), a, WeightDistribution::uniform(n)};
}

/// Weighted MDS: spectrum of K(a) = -1/2 sqrt(Pi) H(a) D H'(a) sqrt(Pi) with
/// Pi = diag(f); coordinates x_i,alpha = sqrt(lambda_alpha / f_i) u_i,alpha.
/// The total inertia tr K(a) = sum of eigenvalues = sum_i f_i D_ia.
inline Embedding weighted_mds(const SquaredDistanceMatrix& d, const WeightDistribution& f,
                              const SignedDistribution& a, double tol = kEigenRelTol) {
    detail::require_same_order(d.order(), f.size(), "weighted MDS");
    const SymmetricMatrix b = scalar_products(d.symmetric(), a);
    const std::size_t n = d.order();
    SymmetricMatrix k(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) k.set(i, j, std::sqrt(f[i] * f[j]) * b(i, j));

    auto [sys, kept] = detail::positive_spectrum(k, tol, "weighted MDS");
    Matrix x(n, kept);
    for (std::size_t alpha = 0; alpha < kept; ++alpha) {
        const double lambda = sys.eigenvalues[alpha];
        for (std::size_t i = 0; i < n; ++i)
            x(i, alpha) = std::sqrt(lambda / f[i]) * sys.eigenvectors(i, alpha);
    }
    sys.eigenvalues.resize(kept);
    return {std::move(x), std::move(sys.eigenvalues), a, f};
}

/// Share of the total inertia expressed by each component:
/// lambda_alpha / sum lambda. Empty for an all-zero spectrum.
inline std::vector<double> reconstruction_proportions(const Embedding& e) {
    double total = 0.0;
    for (double l : e.eigenvalues) total += l;
    if (total <= 0.0) return {};
    std::vector<double> p(e.eigenvalues.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = e.eigenvalues[i] / total;
    return p;
}

/// Keeps the leading `dims` components (the low-dimensional reconstruction
/// that maximizes expressed inertia).
inline Embedding truncate(const Embedding& e, std::size_t dims) {
    if (dims == 0) throw std::invalid_argument("truncate: dimension count must be positive");
    if (dims > e.dimension())
        throw std::invalid_argument("truncate: requested " + std::to_string(dims) +
                                    " dimensions, embedding has " +
                                    std::to_string(e.dimension()));
    Matrix x(e.point_count(), dims);
    for (std::size_t i = 0; i < e.point_count(); ++i)
        for (std::size_t j = 0; j < dims; ++j) x(i, j) = e.coordinates(i, j);
    return {std::move(x),
            std::vector<double>(e.eigenvalues.begin(), e.eigenvalues.begin() + dims),
            e.origin, e.weights};
}

}  // namespace schoenberg
