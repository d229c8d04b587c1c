#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace schoenberg {

/// Seeded random source for the dataset generators. The core generator is
/// the standard 64-bit Mersenne twister (mt19937_64), whose output sequence
/// is fixed by the C++ standard, so a seed reproduces the same stream on
/// every platform. Uniform doubles take the top 53 bits of one draw;
/// normals use the Marsaglia polar rejection method. Both distributions are
/// implemented here rather than through <random>'s distribution templates,
/// whose streams are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via polar rejection; the paired deviate is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace schoenberg
