#pragma once

#include <cstdint>
#include <random>

namespace sfgap {

// Deterministic helpers on top of mt19937_64. The standard distributions are
// implementation-defined, so golden fixtures and byte-identical reports use
// these instead.

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Uniform integer in [0, n), n >= 1. Rejection-free modulo is fine here: the
// generators feed test instances, not statistics.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

} // namespace sfgap
