#pragma once

#include <cstdint>
#include <random>

namespace subdirac {

// Deterministic draws built directly on the engine's bit stream, so reports
// are reproducible across standard library implementations (the distribution
// classes are not pinned down by the standard).
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// uniform on [-1, 1]
inline double uniform_sym(std::mt19937_64& rng) { return 2.0 * uniform01(rng) - 1.0; }

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    // bound is tiny in all uses; modulo bias is irrelevant but determinism is not
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

} // namespace subdirac
