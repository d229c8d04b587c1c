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
#include "schoenberg/transform.hpp"

namespace schoenberg {

/// Per-group membership distributions: vector g carries 1/n_g on the
/// members of group g and 0 elsewhere, so the g-barycenter is the group
/// centroid.
inline std::vector<SignedDistribution> group_distributions(const GroupLabels& labels) {
    const int m = labels.group_count();
    std::vector<SignedDistribution> out;
    out.reserve(static_cast<std::size_t>(m));
    for (int g = 1; g <= m; ++g) {
        std::vector<double> f(labels.size(), 0.0);
        const double w = 1.0 / static_cast<double>(labels.group_size(g));
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == g) f[i] = w;
        out.emplace_back(std::move(f));
    }
    return out;
}

/// Squared distances from every object to every group centroid, n x m.
/// Tiny negatives from round-off are clamped to zero.
struct GroupCentroidDistances {
    Matrix values;  ///< entry (i, g-1): squared distance from object i to centroid of g

    std::size_t object_count() const { return values.rows(); }
    std::size_t group_count() const { return values.cols(); }
};

inline GroupCentroidDistances group_centroid_distances(const SquaredDistanceMatrix& d,
                                                       const GroupLabels& labels) {
    detail::require_same_order(d.order(), labels.size(), "group centroid distances");
    const auto dists = group_distributions(labels);
    const std::size_t n = d.order();
    Matrix values(n, dists.size());
    for (std::size_t g = 0; g < dists.size(); ++g) {
        const std::vector<double> column = distances_to_barycenter(d, dists[g]);
        for (std::size_t i = 0; i < n; ++i) {
            double v = column[i];
            if (v < 0.0 && v >= -1e-10) v = 0.0;
            values(i, g) = v;
        }
    }
    return {std::move(values)};
}

namespace detail {

// argmin per row; ties break toward the lowest group index.
inline std::pair<std::vector<int>, double> assign_by_nearest_centroid(
    const Matrix& centroid_distances, const GroupLabels& labels) {
    const std::size_t n = centroid_distances.rows();
    std::vector<int> assignments(n, 1);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = 0;
        for (std::size_t g = 1; g < centroid_distances.cols(); ++g)
            if (centroid_distances(i, g) < centroid_distances(i, best)) best = g;
        assignments[i] = static_cast<int>(best) + 1;
        if (assignments[i] == labels[i]) ++correct;
    }
    return {std::move(assignments), static_cast<double>(correct) / static_cast<double>(n)};
}

}  // namespace detail

struct ClassificationResult {
    std::vector<int> assignments;  ///< values in 1..m
    double accuracy;               ///< resubstitution accuracy
};

/// Distance-based discriminant: transform the distances, compute each
/// object's squared distance to every group centroid through the Huygens
/// decomposition, and assign to the nearest centroid.
inline ClassificationResult classify(const SquaredDistanceMatrix& d, const GroupLabels& labels,
                                     const SchoenbergTransform& t) {
    const SquaredDistanceMatrix transformed = apply(t, d);
    const GroupCentroidDistances centroid = group_centroid_distances(transformed, labels);
    auto [assignments, accuracy] = detail::assign_by_nearest_centroid(centroid.values, labels);
    return {std::move(assignments), accuracy};
}

enum class SweepFamily { power, log, gaussian };

inline std::string family_name(SweepFamily family) {
    switch (family) {
        case SweepFamily::power: return "power";
        case SweepFamily::log: return "log";
        case SweepFamily::gaussian: return "gaussian";
    }
    return "";
}

/// Accuracy along a parameter grid for one transformation family. For the
/// power family entries with invalid_transform set, the mapped matrix
/// failed the c.n.d. test (exponents above 1 are not valid transformations;
/// they are still swept to measure the damage).
struct SweepResult {
    SweepFamily family;
    std::vector<double> parameters;
    std::vector<double> accuracies;
    std::vector<bool> invalid_transform;
};

inline SweepResult parameter_sweep(const SquaredDistanceMatrix& d, const GroupLabels& labels,
                                   SweepFamily family, const std::vector<double>& grid) {
    detail::require_same_order(d.order(), labels.size(), "parameter sweep");
    if (grid.empty()) throw std::invalid_argument("parameter sweep: empty grid");
    for (double a : grid)
        if (a <= 0.0)
            throw std::invalid_argument("parameter sweep: grid value " + std::to_string(a) +
                                        " must be positive for the " + family_name(family) +
                                        " family");

    SweepResult result{family, grid, {}, {}};
    result.accuracies.reserve(grid.size());
    result.invalid_transform.reserve(grid.size());
    const std::size_t n = d.order();

    for (double a : grid) {
        if (family == SweepFamily::power) {
            // Raw elementwise mapping: exponents above 1 must remain
            // sweepable even though they break the Euclidean property.
            SymmetricMatrix mapped(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) mapped.set(i, j, std::pow(d(i, j), a));
            const GroupLabels& l = labels;
            Matrix centroid(n, static_cast<std::size_t>(l.group_count()));
            const auto dists = group_distributions(l);
            for (std::size_t g = 0; g < dists.size(); ++g) {
                // Huygens decomposition applied to the raw mapped matrix
                const auto& fg = dists[g];
                std::vector<double> row(n, 0.0);
                double delta = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    double acc = 0.0;
                    for (std::size_t j = 0; j < n; ++j) acc += fg[j] * mapped(i, j);
                    row[i] = acc;
                    delta += fg[i] * acc;
                }
                delta *= 0.5;
                for (std::size_t i = 0; i < n; ++i) centroid(i, g) = row[i] - delta;
            }
            auto [assignments, accuracy] = detail::assign_by_nearest_centroid(centroid, labels);
            result.accuracies.push_back(accuracy);
            result.invalid_transform.push_back(!is_cnd(mapped));
        } else {
            const SchoenbergTransform t = family == SweepFamily::log
                                              ? SchoenbergTransform::log(a)
                                              : SchoenbergTransform::gaussian(a);
            result.accuracies.push_back(classify(d, labels, t).accuracy);
            result.invalid_transform.push_back(false);
        }
    }
    return result;
}

}  // namespace schoenberg
