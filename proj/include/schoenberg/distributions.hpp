#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace schoenberg {

/// Inputs whose components sum to 1 within this tolerance are renormalized
/// silently (text-format round-off); anything further off is rejected.
inline constexpr double kDistributionSumTol = 1e-8;

namespace detail {

inline std::vector<double> normalized_components(std::vector<double> c, const char* kind) {
    if (c.empty()) throw std::invalid_argument(std::string(kind) + ": empty component vector");
    const double sum = std::accumulate(c.begin(), c.end(), 0.0);
    if (std::fabs(sum - 1.0) > kDistributionSumTol)
        throw std::invalid_argument(std::string(kind) + ": components sum to " +
                                    std::to_string(sum) + ", expected 1");
    for (double& v : c) v /= sum;
    return c;
}

}  // namespace detail

/// A signed distribution: components sum to 1, individual entries may be
/// negative. Used as the origin choice of an embedding.
class SignedDistribution {
public:
    explicit SignedDistribution(std::vector<double> components)
        : a_(detail::normalized_components(std::move(components), "signed distribution")) {}

    static SignedDistribution uniform(std::size_t n) {
        return SignedDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    /// All mass on object k (0-based).
    static SignedDistribution point_mass(std::size_t n, std::size_t k) {
        if (k >= n)
            throw std::invalid_argument("point mass index " + std::to_string(k) +
                                        " out of range for " + std::to_string(n) + " objects");
        std::vector<double> c(n, 0.0);
        c[k] = 1.0;
        return SignedDistribution(std::move(c));
    }

    std::size_t size() const { return a_.size(); }
    double operator[](std::size_t i) const { return a_[i]; }
    const std::vector<double>& components() const { return a_; }

private:
    std::vector<double> a_;
};

/// Strictly positive object weights summing to 1.
class WeightDistribution {
public:
    explicit WeightDistribution(std::vector<double> components)
        : f_(detail::normalized_components(std::move(components), "weight distribution")) {
        for (std::size_t i = 0; i < f_.size(); ++i)
            if (f_[i] <= 0.0)
                throw std::invalid_argument("weight distribution: component " +
                                            std::to_string(i + 1) + " is not positive");
    }

    static WeightDistribution uniform(std::size_t n) {
        return WeightDistribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
    }

    std::size_t size() const { return f_.size(); }
    double operator[](std::size_t i) const { return f_[i]; }
    const std::vector<double>& components() const { return f_; }

    SignedDistribution as_signed() const { return SignedDistribution(f_); }

private:
    std::vector<double> f_;
};

/// Group membership: labels in 1..m with every group nonempty.
class GroupLabels {
public:
    explicit GroupLabels(std::vector<int> labels) : labels_(std::move(labels)) {
        if (labels_.empty()) throw std::invalid_argument("group labels: empty label vector");
        group_count_ = *std::max_element(labels_.begin(), labels_.end());
        if (group_count_ < 1)
            throw std::invalid_argument("group labels: labels must be positive integers");
        std::vector<std::size_t> counts(static_cast<std::size_t>(group_count_), 0);
        for (int l : labels_) {
            if (l < 1 || l > group_count_)
                throw std::invalid_argument("group labels: label " + std::to_string(l) +
                                            " outside 1.." + std::to_string(group_count_));
            ++counts[static_cast<std::size_t>(l - 1)];
        }
        for (int g = 1; g <= group_count_; ++g)
            if (counts[static_cast<std::size_t>(g - 1)] == 0)
                throw std::invalid_argument("group labels: group " + std::to_string(g) +
                                            " is empty");
        sizes_ = std::move(counts);
    }

    std::size_t size() const { return labels_.size(); }
    int group_count() const { return group_count_; }
    int operator[](std::size_t i) const { return labels_[i]; }
    std::size_t group_size(int g) const { return sizes_[static_cast<std::size_t>(g - 1)]; }
    const std::vector<int>& labels() const { return labels_; }

private:
    std::vector<int> labels_;
    std::vector<std::size_t> sizes_;
    int group_count_ = 0;
};

}  // namespace schoenberg
