#pragma once

// Portable seeded sampling. The standard distributions are implementation
// defined, so draws are derived from the raw mt19937_64 stream directly.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "severi/scalar.hpp"

namespace severi {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer on [lo, hi] by rejection.
    long uniform_int(long lo, long hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t v;
        do v = engine_();
        while (v >= limit);
        return lo + static_cast<long>(v % span);
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        double u1;
        do u1 = uniform();
        while (u1 <= 0.0);
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Complex complex_gaussian() { return {gaussian(), gaussian()}; }

private:
    std::mt19937_64 engine_;
};

/// Deterministic per-task seed derivation.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = base ^ 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t v : {a, b, c}) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
    }
    return h;
}

}  // namespace severi
