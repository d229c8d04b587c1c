#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "schoenberg/distance_geometry.hpp"
#include "schoenberg/distributions.hpp"
#include "schoenberg/eigen.hpp"
#include "schoenberg/matrix.hpp"
#include "schoenberg/random.hpp"

namespace schoenberg {

/// A configuration of n points in p dimensions, optionally labeled, with a
/// record of where it came from.
struct PointCloud {
    Matrix coordinates;  ///< n x p
    std::optional<GroupLabels> labels;
    std::string provenance;

    std::size_t point_count() const { return coordinates.rows(); }
    std::size_t dimension() const { return coordinates.cols(); }
};

/// Square lattice of side^2 points with the given spacing.
inline PointCloud generate_grid(int side = 10, double spacing = 1.0) {
    if (side < 2) throw std::invalid_argument("grid: side must be at least 2");
    if (spacing <= 0.0) throw std::invalid_argument("grid: spacing must be positive");
    const std::size_t n = static_cast<std::size_t>(side) * static_cast<std::size_t>(side);
    Matrix x(n, 2);
    std::size_t row = 0;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j) {
            x(row, 0) = spacing * i;
            x(row, 1) = spacing * j;
            ++row;
        }
    return {std::move(x), std::nullopt,
            "grid(side=" + std::to_string(side) + ",spacing=" + std::to_string(spacing) + ")"};
}

/// Quasi-unidimensional rod: first coordinate uniform on (0, 1000), second
/// uniform on (0, 1).
inline PointCloud generate_rod(int n = 1000, std::uint64_t seed = 0) {
    if (n < 2) throw std::invalid_argument("rod: needs at least 2 points");
    Rng rng(seed);
    Matrix x(static_cast<std::size_t>(n), 2);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = rng.uniform(0.0, 1000.0);
        x(i, 1) = rng.uniform(0.0, 1.0);
    }
    return {std::move(x), std::nullopt,
            "rod(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")"};
}

/// Three concentric circles of radii 1, 3 and 5 with radial standard
/// deviations 0.1, 0.3 and 0.2, per_group points each, labeled 1..3.
/// A negative perturbed radius is kept as-is (the point reflects through
/// the origin).
inline PointCloud generate_circles(int per_group = 50, std::uint64_t seed = 0) {
    if (per_group < 1) throw std::invalid_argument("circles: per_group must be at least 1");
    constexpr double radii[3] = {1.0, 3.0, 5.0};
    constexpr double sds[3] = {0.1, 0.3, 0.2};
    Rng rng(seed);
    const std::size_t n = 3 * static_cast<std::size_t>(per_group);
    Matrix x(n, 2);
    std::vector<int> labels(n);
    std::size_t row = 0;
    for (int g = 0; g < 3; ++g)
        for (int i = 0; i < per_group; ++i) {
            const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double r = radii[g] + sds[g] * rng.normal();
            x(row, 0) = r * std::cos(angle);
            x(row, 1) = r * std::sin(angle);
            labels[row] = g + 1;
            ++row;
        }
    return {std::move(x), GroupLabels(std::move(labels)),
            "circles(per_group=" + std::to_string(per_group) +
                ",seed=" + std::to_string(seed) + ")"};
}

inline SquaredDistanceMatrix squared_distances(const PointCloud& cloud) {
    return SquaredDistanceMatrix::from_coordinates(cloud.coordinates);
}

namespace detail {

// Covariance whitening shared by both standardization modes. Columns whose
// variance is negligible relative to the largest are dropped before
// inverting; a singular covariance beyond that is an error naming the
// deficient eigen-directions.
inline Matrix whiten(const Matrix& centered, const SymmetricMatrix& covariance) {
    const EigenSystem sys = decompose(covariance);
    const double lambda_max = sys.eigenvalues.front();
    if (lambda_max <= 0.0)
        throw Error("standardization: covariance has no positive direction");
    std::string deficient;
    for (std::size_t i = 0; i < sys.eigenvalues.size(); ++i)
        if (sys.eigenvalues[i] <= 1e-12 * lambda_max)
            deficient += (deficient.empty() ? "" : ", ") + std::to_string(i + 1);
    if (!deficient.empty())
        throw Error("standardization: covariance is singular along eigen-direction(s) " +
                    deficient);

    const std::size_t p = covariance.order();
    Matrix w(p, p);  // U diag(1/sqrt(lambda))
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            w(i, j) = sys.eigenvectors(i, j) / std::sqrt(sys.eigenvalues[j]);
    return centered * w;
}

}  // namespace detail

/// Whitens the coordinates so squared distances become Mahalanobis
/// distances. For a labeled cloud the metric is the pooled within-group
/// covariance (the discriminant-analysis convention); otherwise the total
/// sample covariance. Near-constant columns are dropped first.
inline PointCloud mahalanobis_standardize(const PointCloud& cloud) {
    const std::size_t n = cloud.point_count();
    if (n < 2) throw std::invalid_argument("standardization: needs at least 2 points");

    // column means and variances for the near-zero-variance drop
    const Matrix& x = cloud.coordinates;
    const std::size_t p_all = x.cols();
    std::vector<double> mean(p_all, 0.0), var(p_all, 0.0);
    for (std::size_t j = 0; j < p_all; ++j) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m += x(i, j);
        mean[j] = m / static_cast<double>(n);
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x(i, j) - mean[j];
            v += d * d;
        }
        var[j] = v / static_cast<double>(n - 1);
    }
    double var_max = 0.0;
    for (double v : var) var_max = std::max(var_max, v);
    std::vector<std::size_t> kept;
    for (std::size_t j = 0; j < p_all; ++j)
        if (var[j] > 1e-12 * std::max(1.0, var_max)) kept.push_back(j);
    if (kept.empty()) throw Error("standardization: all columns are constant");

    Matrix centered(n, kept.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < kept.size(); ++j)
            centered(i, j) = x(i, kept[j]) - mean[kept[j]];

    const std::size_t p = kept.size();
    SymmetricMatrix cov(p);
    if (cloud.labels) {
        // pooled within-group covariance
        const GroupLabels& labels = *cloud.labels;
        const int m = labels.group_count();
        if (n <= static_cast<std::size_t>(m))
            throw std::invalid_argument("standardization: more groups than free points");
        Matrix group_mean(static_cast<std::size_t>(m), p);
        for (std::size_t i = 0; i < n; ++i) {
            const auto g = static_cast<std::size_t>(labels[i] - 1);
            for (std::size_t j = 0; j < p; ++j) group_mean(g, j) += centered(i, j);
        }
        for (int g = 0; g < m; ++g) {
            const double ng = static_cast<double>(labels.group_size(g + 1));
            for (std::size_t j = 0; j < p; ++j)
                group_mean(static_cast<std::size_t>(g), j) /= ng;
        }
        Matrix sums(p, p);
        for (std::size_t i = 0; i < n; ++i) {
            const auto g = static_cast<std::size_t>(labels[i] - 1);
            for (std::size_t a = 0; a < p; ++a) {
                const double da = centered(i, a) - group_mean(g, a);
                for (std::size_t b = a; b < p; ++b)
                    sums(a, b) += da * (centered(i, b) - group_mean(g, b));
            }
        }
        const double dof = static_cast<double>(n) - static_cast<double>(m);
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = a; b < p; ++b) cov.set(a, b, sums(a, b) / dof);
    } else {
        Matrix sums(p, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t a = 0; a < p; ++a)
                for (std::size_t b = a; b < p; ++b) sums(a, b) += centered(i, a) * centered(i, b);
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = a; b < p; ++b)
                cov.set(a, b, sums(a, b) / static_cast<double>(n - 1));
    }

    return {detail::whiten(centered, cov), cloud.labels,
            cloud.provenance + " | mahalanobis"};
}

}  // namespace schoenberg
