#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace strata {

/// Portable seeded generator: mt19937_64 output is fixed by the standard,
/// and the derived draws below avoid the implementation-defined
/// std::*_distribution classes so results match across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    bool chance(double p) { return unit() < p; }

    /// Standard normal by Box-Muller (one value per call).
    double normal() {
        double u1 = unit();
        while (u1 <= 0.0)
            u1 = unit();
        const double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finaliser.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Per-stage seed derived from the run seed and a stage name.
inline std::uint64_t stage_seed(std::uint64_t seed, std::string_view stage) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : stage) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return mix64(seed ^ h);
}

} // namespace strata
