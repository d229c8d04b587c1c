#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "schoenberg/datasets.hpp"
#include "schoenberg/discriminant.hpp"
#include "schoenberg/mds.hpp"
#include "test_support.hpp"

using namespace schoenberg;
using Catch::Approx;

TEST_CASE("group distributions: small example, single group, circles") {
    const auto two = group_distributions(GroupLabels({1, 1, 2}));
    REQUIRE(two.size() == 2);
    CHECK(two[0][0] == Approx(0.5));
    CHECK(two[0][1] == Approx(0.5));
    CHECK(two[0][2] == 0.0);
    CHECK(two[1][2] == Approx(1.0));

    const auto single = group_distributions(GroupLabels({1, 1, 1, 1}));
    REQUIRE(single.size() == 1);
    for (std::size_t i = 0; i < 4; ++i) CHECK(single[0][i] == Approx(0.25));

    const PointCloud circles = generate_circles(50, 9);
    const auto three = group_distributions(*circles.labels);
    REQUIRE(three.size() == 3);
    for (const auto& f : three) {
        double sum = 0.0;
        int support = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            sum += f[i];
            if (f[i] != 0.0) {
                CHECK(f[i] == Approx(1.0 / 50.0));
                ++support;
            }
        }
        CHECK(sum == Approx(1.0));
        CHECK(support == 50);
    }
}

TEST_CASE("centroid distances equal the Huygens decomposition per group") {
    const PointCloud circles = generate_circles(20, 3);
    const auto d = squared_distances(circles);
    const auto t = SchoenbergTransform::gaussian(0.4);
    const auto transformed = apply(t, d);
    const auto centroid = group_centroid_distances(transformed, *circles.labels);
    const auto groups = group_distributions(*circles.labels);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const auto huygens = distances_to_barycenter(transformed, groups[g]);
        for (std::size_t i = 0; i < d.order(); ++i)
            CHECK(centroid.values(i, g) == Approx(std::max(huygens[i], 0.0)).margin(1e-10));
    }
}

TEST_CASE("centroid distances match explicit coordinates on small instances") {
    Rng rng(14);
    for (int rep = 0; rep < 6; ++rep) {
        const std::size_t n = 8 + static_cast<std::size_t>(rng.uniform() * 5);
        const Matrix x = test_support::random_cloud(rng, n, 2);
        std::vector<int> labels(n);
        for (std::size_t i = 0; i < n; ++i) labels[i] = 1 + static_cast<int>(i % 3);
        const GroupLabels gl(labels);
        const auto d = SquaredDistanceMatrix::from_coordinates(x);
        const auto t = SchoenbergTransform::power(0.7);
        const auto transformed = apply(t, d);
        const auto centroid = group_centroid_distances(transformed, gl);

        // oracle: embed the transformed distances, take group means there
        const Embedding e =
            weighted_mds(transformed, WeightDistribution::uniform(n),
                         SignedDistribution::uniform(n));
        for (int g = 1; g <= 3; ++g) {
            std::vector<double> mean(e.dimension(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (labels[i] != g) continue;
                for (std::size_t c = 0; c < e.dimension(); ++c)
                    mean[c] += e.coordinates(i, c) / static_cast<double>(gl.group_size(g));
            }
            for (std::size_t i = 0; i < n; ++i) {
                double sq = 0.0;
                for (std::size_t c = 0; c < e.dimension(); ++c) {
                    const double diff = e.coordinates(i, c) - mean[c];
                    sq += diff * diff;
                }
                CHECK(centroid.values(i, static_cast<std::size_t>(g - 1)) ==
                      Approx(sq).margin(1e-7));
            }
        }
    }
}

TEST_CASE("classification on the circles: identity is near chance, gaussian separates") {
    const PointCloud circles = generate_circles(50, 9);
    const auto d = squared_distances(circles);
    const auto identity = classify(d, *circles.labels, SchoenbergTransform::identity());
    CHECK(identity.accuracy > 0.28);
    CHECK(identity.accuracy < 0.42);
    for (int v : identity.assignments) {
        CHECK(v >= 1);
        CHECK(v <= 3);
    }

    const auto gauss = classify(d, *circles.labels, SchoenbergTransform::gaussian(0.65));
    CHECK(gauss.accuracy == 1.0);
}

TEST_CASE("ties at the argmin go to the lowest group index") {
    // two coincident points in different groups: both centroid distances 0
    Matrix x(2, 1);
    const auto d = SquaredDistanceMatrix::from_coordinates(x);
    const auto result = classify(d, GroupLabels({1, 2}), SchoenbergTransform::identity());
    CHECK(result.assignments[0] == 1);
    CHECK(result.assignments[1] == 1);
    CHECK(result.accuracy == 0.5);
}

TEST_CASE("gaussian classification is invariant under the scale reparameterization") {
    const PointCloud circles = generate_circles(30, 5);
    const auto d = squared_distances(circles);
    const double c = 3.7;
    Matrix scaled_full = d.symmetric().full();
    for (std::size_t i = 0; i < d.order(); ++i)
        for (std::size_t j = 0; j < d.order(); ++j) scaled_full(i, j) *= c;
    const auto scaled = SquaredDistanceMatrix::from_raw(scaled_full);

    const double a = 0.21;
    const auto on_scaled = classify(scaled, *circles.labels, SchoenbergTransform::gaussian(a));
    const auto reparam = classify(d, *circles.labels, SchoenbergTransform::gaussian(c * a));
    CHECK(on_scaled.accuracy == reparam.accuracy);
    CHECK(on_scaled.assignments == reparam.assignments);
}

TEST_CASE("parameter sweep: power grid reproduces identity at a=1 and flags a>1") {
    const PointCloud circles = generate_circles(50, 9);
    const auto d = squared_distances(circles);
    const auto& labels = *circles.labels;
    const SweepResult sweep =
        parameter_sweep(d, labels, SweepFamily::power, {0.5, 1.0, 1.5, 2.0});
    REQUIRE(sweep.parameters.size() == 4);
    REQUIRE(sweep.accuracies.size() == 4);
    REQUIRE(sweep.invalid_transform.size() == 4);

    const double identity_acc = classify(d, labels, SchoenbergTransform::identity()).accuracy;
    CHECK(sweep.accuracies[1] == identity_acc);

    CHECK_FALSE(sweep.invalid_transform[0]);
    CHECK_FALSE(sweep.invalid_transform[1]);
    CHECK(sweep.invalid_transform[2]);
    CHECK(sweep.invalid_transform[3]);
    CHECK(sweep.accuracies[2] < 1.0 / 3.0);
    CHECK(sweep.accuracies[3] < 1.0 / 3.0);
}

TEST_CASE("parameter sweep: gaussian reaches 1.0, log rises and plateaus") {
    const PointCloud circles = generate_circles(50, 9);
    const auto d = squared_distances(circles);
    const auto& labels = *circles.labels;

    std::vector<double> grid;
    for (double a = 0.05; a <= 2.0 + 1e-12; a += 0.05) grid.push_back(a);
    const SweepResult gauss = parameter_sweep(d, labels, SweepFamily::gaussian, grid);
    double best = 0.0;
    for (double acc : gauss.accuracies) best = std::max(best, acc);
    CHECK(best == 1.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (grid[i] >= 0.65) CHECK(gauss.accuracies[i] == 1.0);
    for (bool invalid : gauss.invalid_transform) CHECK_FALSE(invalid);

    const SweepResult log_sweep =
        parameter_sweep(d, labels, SweepFamily::log, {0.1, 1.0, 10.0, 100.0});
    // the log transform helps: clearly above the identity baseline by a = 10
    const double identity_acc = classify(d, labels, SchoenbergTransform::identity()).accuracy;
    CHECK(log_sweep.accuracies[2] > identity_acc);
    CHECK(log_sweep.accuracies[3] >= log_sweep.accuracies[2] - 0.05);
}

TEST_CASE("parameter sweep: determinism and input validation") {
    const PointCloud circles = generate_circles(25, 11);
    const auto d = squared_distances(circles);
    const auto& labels = *circles.labels;
    const std::vector<double> grid = {0.2, 0.6, 1.0};
    const SweepResult a = parameter_sweep(d, labels, SweepFamily::gaussian, grid);
    const SweepResult b = parameter_sweep(d, labels, SweepFamily::gaussian, grid);
    CHECK(a.accuracies == b.accuracies);
    CHECK(a.invalid_transform == b.invalid_transform);

    CHECK_THROWS_AS(parameter_sweep(d, labels, SweepFamily::log, {0.5, -1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(parameter_sweep(d, labels, SweepFamily::gaussian, {}),
                    std::invalid_argument);
}
