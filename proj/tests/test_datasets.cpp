#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "schoenberg/datasets.hpp"
#include "test_support.hpp"

using namespace schoenberg;
using Catch::Approx;

namespace {

std::vector<double> sorted_distances(const PointCloud& cloud) {
    const auto d = squared_distances(cloud);
    std::vector<double> out;
    for (std::size_t i = 0; i < d.order(); ++i)
        for (std::size_t j = i + 1; j < d.order(); ++j) out.push_back(d(i, j));
    std::sort(out.begin(), out.end());
    return out;
}

Matrix sample_covariance(const Matrix& x) {
    const std::size_t n = x.rows(), p = x.cols();
    std::vector<double> mean(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t i = 0; i < n; ++i) mean[j] += x(i, j);
        mean[j] /= static_cast<double>(n);
    }
    Matrix cov(p, p);
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = 0; b < p; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
            cov(a, b) = s / static_cast<double>(n - 1);
        }
    return cov;
}

}  // namespace

TEST_CASE("grid: shape, corners, and quarter-turn symmetry") {
    const PointCloud g = generate_grid();
    CHECK(g.point_count() == 100);
    CHECK(g.dimension() == 2);
    CHECK_FALSE(g.labels.has_value());

    const PointCloud square = generate_grid(2, 1.0);
    REQUIRE(square.point_count() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            CHECK((square.coordinates(i, j) == 0.0 || square.coordinates(i, j) == 1.0));

    // rotating the lattice a quarter turn permutes the points, so the
    // multiset of pairwise distances is unchanged
    const PointCloud grid = generate_grid(5, 0.5);
    PointCloud rotated = grid;
    for (std::size_t i = 0; i < grid.point_count(); ++i) {
        rotated.coordinates(i, 0) = grid.coordinates(i, 1);
        rotated.coordinates(i, 1) = 4 * 0.5 - grid.coordinates(i, 0);
    }
    CHECK(sorted_distances(grid) == sorted_distances(rotated));

    CHECK_THROWS_AS(generate_grid(1), std::invalid_argument);
    CHECK_THROWS_AS(generate_grid(10, 0.0), std::invalid_argument);
}

TEST_CASE("rod: shape, determinism, sample means near the uniform expectation") {
    const PointCloud rod = generate_rod(1000, 42);
    CHECK(rod.point_count() == 1000);
    CHECK(rod.dimension() == 2);

    const PointCloud again = generate_rod(1000, 42);
    for (std::size_t i = 0; i < 1000; ++i) {
        CHECK(rod.coordinates(i, 0) == again.coordinates(i, 0));
        CHECK(rod.coordinates(i, 1) == again.coordinates(i, 1));
    }

    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < 1000; ++i) {
        m1 += rod.coordinates(i, 0);
        m2 += rod.coordinates(i, 1);
        CHECK(rod.coordinates(i, 0) >= 0.0);
        CHECK(rod.coordinates(i, 0) < 1000.0);
        CHECK(rod.coordinates(i, 1) >= 0.0);
        CHECK(rod.coordinates(i, 1) < 1.0);
    }
    m1 /= 1000.0;
    m2 /= 1000.0;
    // 3 standard errors of the mean of U(0, L): 3 L / (sqrt(12) sqrt(n))
    CHECK(std::fabs(m1 - 500.0) < 3.0 * 1000.0 / std::sqrt(12.0) / std::sqrt(1000.0));
    CHECK(std::fabs(m2 - 0.5) < 3.0 / std::sqrt(12.0) / std::sqrt(1000.0));
}

TEST_CASE("circles: sizes, labels, radial means") {
    const PointCloud c = generate_circles(50, 9);
    CHECK(c.point_count() == 150);
    CHECK(c.dimension() == 2);
    REQUIRE(c.labels.has_value());
    CHECK(c.labels->group_count() == 3);
    for (int g = 1; g <= 3; ++g) CHECK(c.labels->group_size(g) == 50);

    const double radii[3] = {1.0, 3.0, 5.0};
    const double sds[3] = {0.1, 0.3, 0.2};
    for (int g = 1; g <= 3; ++g) {
        double mean_radius = 0.0;
        for (std::size_t i = 0; i < 150; ++i) {
            if ((*c.labels)[i] != g) continue;
            mean_radius += std::hypot(c.coordinates(i, 0), c.coordinates(i, 1));
        }
        mean_radius /= 50.0;
        CHECK(std::fabs(mean_radius - radii[g - 1]) < 3.0 * sds[g - 1] / std::sqrt(50.0));
    }

    // deterministic per seed, different across seeds
    const PointCloud same = generate_circles(50, 9);
    CHECK(c.coordinates(17, 0) == same.coordinates(17, 0));
    const PointCloud other = generate_circles(50, 10);
    CHECK(c.coordinates(17, 0) != other.coordinates(17, 0));
}

TEST_CASE("squared distances: 3-4-5 points, duplicates, triangle inequality") {
    Matrix x(2, 2);
    x(1, 0) = 3.0;
    x(1, 1) = 4.0;
    const auto d = SquaredDistanceMatrix::from_coordinates(x);
    CHECK(d(0, 1) == Approx(25.0));
    CHECK(d(0, 0) == 0.0);

    Matrix dup(3, 2);
    dup(2, 0) = 1.0;  // rows 0 and 1 coincide
    const auto dd = SquaredDistanceMatrix::from_coordinates(dup);
    CHECK(dd(0, 1) == 0.0);

    Rng rng(8);
    for (int rep = 0; rep < 10; ++rep) {
        const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform() * 17);
        const auto dr = test_support::random_distances(rng, n, 3);
        CHECK(is_cnd(dr.symmetric()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k)
                    CHECK(std::sqrt(dr(i, j)) <=
                          std::sqrt(dr(i, k)) + std::sqrt(dr(k, j)) + 1e-10);
    }
}

TEST_CASE("standardization: whitened data gets identity covariance") {
    Rng rng(18);
    const std::size_t n = 60;
    Matrix x(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = rng.normal();
        x(i, 1) = 10.0 * rng.normal();          // axis-scaled
        x(i, 2) = 0.5 * rng.normal() + x(i, 0);  // correlated
    }
    const PointCloud cloud{x, std::nullopt, "test"};
    const PointCloud white = mahalanobis_standardize(cloud);
    const Matrix cov = sample_covariance(white.coordinates);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            CHECK(cov(a, b) == Approx(a == b ? 1.0 : 0.0).margin(1e-8));

    // a second application preserves distances (idempotent up to rotation)
    const PointCloud twice = mahalanobis_standardize(white);
    const auto d1 = squared_distances(white);
    const auto d2 = squared_distances(twice);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            CHECK(d1(i, j) == Approx(d2(i, j)).margin(1e-9 * std::max(1.0, d1(i, j))));
}

TEST_CASE("standardization: labeled clouds whiten the pooled within-group covariance") {
    Rng rng(28);
    const std::size_t per = 40;
    Matrix x(2 * per, 2);
    std::vector<int> labels(2 * per);
    for (std::size_t i = 0; i < 2 * per; ++i) {
        const bool second = i >= per;
        x(i, 0) = rng.normal() * 2.0 + (second ? 8.0 : 0.0);
        x(i, 1) = rng.normal() * 0.5;
        labels[i] = second ? 2 : 1;
    }
    const PointCloud cloud{x, GroupLabels(labels), "test"};
    const PointCloud white = mahalanobis_standardize(cloud);

    // pooled within-group covariance of the transformed coordinates is I
    std::vector<double> mean1(2, 0.0), mean2(2, 0.0);
    for (std::size_t i = 0; i < 2 * per; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            (i < per ? mean1 : mean2)[j] += white.coordinates(i, j) / static_cast<double>(per);
    Matrix pooled(2, 2);
    for (std::size_t i = 0; i < 2 * per; ++i) {
        const auto& mean = i < per ? mean1 : mean2;
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t b = 0; b < 2; ++b)
                pooled(a, b) += (white.coordinates(i, a) - mean[a]) *
                                (white.coordinates(i, b) - mean[b]);
    }
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
            CHECK(pooled(a, b) / (2.0 * per - 2.0) == Approx(a == b ? 1.0 : 0.0).margin(1e-8));
}

TEST_CASE("standardization: constant columns are dropped, rank defects are named") {
    Rng rng(38);
    Matrix with_constant(20, 3);
    for (std::size_t i = 0; i < 20; ++i) {
        with_constant(i, 0) = rng.normal();
        with_constant(i, 1) = 4.2;  // constant
        with_constant(i, 2) = rng.normal();
    }
    const PointCloud cloud{with_constant, std::nullopt, "test"};
    const PointCloud white = mahalanobis_standardize(cloud);
    CHECK(white.dimension() == 2);

    Matrix collinear(20, 2);
    for (std::size_t i = 0; i < 20; ++i) {
        collinear(i, 0) = rng.normal();
        collinear(i, 1) = -3.0 * collinear(i, 0);
    }
    const PointCloud bad{collinear, std::nullopt, "test"};
    CHECK_THROWS_WITH(mahalanobis_standardize(bad),
                      Catch::Matchers::ContainsSubstring("eigen-direction"));
}
