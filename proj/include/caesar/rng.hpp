#pragma once

#include <cstdint>
#include <random>

namespace caesar {

/// Deterministic RNG with explicit distributions. mt19937_64 is specified by
/// the standard, but the standard distributions are not; drawing through the
/// helpers below keeps streams bit-identical across toolchains.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}
    Rng(uint64_t seed, uint64_t stream) : engine_(mix(seed, stream)) {}

    uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound), bound >= 1. Rejection sampling keeps
    /// the distribution exact.
    uint64_t uniform_below(uint64_t bound) {
        const uint64_t limit = bound * (UINT64_MAX / bound);
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    int uniform_int(int bound) { return static_cast<int>(uniform_below(static_cast<uint64_t>(bound))); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller (deterministic, no cached spare).
    double normal() {
        double u1;
        do {
            u1 = uniform01();
        } while (u1 <= 0.0);
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// splitmix64-style mixing used to derive per-stream seeds.
    static uint64_t mix(uint64_t a, uint64_t b) {
        uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace caesar
