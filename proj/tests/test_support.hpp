#pragma once

// Shared helpers for the test suites: random configurations, independent
// brute-force oracles, and finite differences.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "schoenberg/distance_geometry.hpp"
#include "schoenberg/matrix.hpp"
#include "schoenberg/random.hpp"

namespace test_support {

inline schoenberg::Matrix random_cloud(schoenberg::Rng& rng, std::size_t n, std::size_t p,
                                       double scale = 3.0) {
    schoenberg::Matrix x(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) x(i, j) = rng.uniform(-scale, scale);
    return x;
}

inline schoenberg::SquaredDistanceMatrix random_distances(schoenberg::Rng& rng, std::size_t n,
                                                          std::size_t p, double scale = 3.0) {
    return schoenberg::SquaredDistanceMatrix::from_coordinates(random_cloud(rng, n, p, scale));
}

inline schoenberg::SymmetricMatrix random_symmetric(schoenberg::Rng& rng, std::size_t n,
                                                    double scale = 2.0) {
    schoenberg::SymmetricMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, rng.uniform(-scale, scale));
    return m;
}

/// Random signed distribution with components in [-1, 2], renormalized.
inline schoenberg::SignedDistribution random_signed(schoenberg::Rng& rng, std::size_t n) {
    while (true) {
        std::vector<double> c(n);
        double sum = 0.0;
        for (double& v : c) {
            v = rng.uniform(-1.0, 2.0);
            sum += v;
        }
        if (std::fabs(sum) < 0.2) continue;  // avoid blow-up when normalizing
        for (double& v : c) v /= sum;
        return schoenberg::SignedDistribution(c);
    }
}

inline schoenberg::WeightDistribution random_weights(schoenberg::Rng& rng, std::size_t n) {
    std::vector<double> c(n);
    double sum = 0.0;
    for (double& v : c) {
        v = rng.uniform(0.05, 1.0);
        sum += v;
    }
    for (double& v : c) v /= sum;
    return schoenberg::WeightDistribution(c);
}

/// Brute-force check of the conditionally-negative-definite property:
/// maximizes (z, Mz) over random zero-sum vectors and sign patterns.
/// Returns the largest quadratic form value found (positive => not c.n.d.).
inline double max_zero_sum_quadratic_form(const schoenberg::SymmetricMatrix& m,
                                          schoenberg::Rng& rng, int trials = 2000) {
    const std::size_t n = m.order();
    double worst = -1e300;
    auto eval = [&](const std::vector<double>& z) {
        double q = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < n; ++j) row += m(i, j) * z[j];
            q += z[i] * row;
        }
        worst = std::max(worst, q);
    };
    std::vector<double> z(n);
    for (int t = 0; t < trials; ++t) {
        double mean = 0.0;
        for (double& v : z) {
            v = rng.uniform(-1.0, 1.0);
            mean += v;
        }
        mean /= static_cast<double>(n);
        for (double& v : z) v -= mean;
        eval(z);
    }
    // all +-1 sign patterns with zero sum, for small n
    if (n <= 12 && n % 2 == 0) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) != n / 2) continue;
            for (std::size_t i = 0; i < n; ++i) z[i] = (mask >> i) & 1 ? 1.0 : -1.0;
            eval(z);
        }
    }
    return worst;
}

/// Central finite difference of f at x with step h.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double second_central_difference(const std::function<double(double)>& f, double x,
                                        double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace test_support
