#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ccaa {

/// 64-bit mixing finalizer used for seed derivation.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Seed for the i-th independent stream derived from a master seed.
/// Distinct (master, index) pairs map to well-separated stream states.
inline constexpr std::uint64_t derive_seed(std::uint64_t master_seed,
                                           std::uint64_t index) noexcept {
    return mix64(master_seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

/// Splittable counter-style generator (splitmix64). One instance per run;
/// the whole optimizer trajectory is a pure function of the seed.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next_u64() noexcept {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept { return ~0ull; }
    constexpr std::uint64_t operator()() noexcept { return next_u64(); }

    /// Uniform double in [0, 1), 53 significant bits.
    double uniform01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept {
        return lo + (hi - lo) * uniform01();
    }

    /// Uniform index in [0, bound). bound must be nonzero.
    std::uint64_t uniform_index(std::uint64_t bound) noexcept {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    /// Uniform integer in [lo, hi], both ends inclusive.
    int uniform_int(int lo, int hi) noexcept {
        return lo + static_cast<int>(uniform_index(
                        static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Standard normal draw (Box-Muller); consumes exactly two uniforms.
    double gaussian() noexcept {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace ccaa
