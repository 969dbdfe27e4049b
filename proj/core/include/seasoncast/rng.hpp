#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace seasoncast {

// Draws derived from the raw mt19937_64 stream instead of the standard
// distributions, so sequences are identical across standard libraries.

// Uniform in [0, 1), 53-bit resolution.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in [lo, hi).
inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

// Standard normal via Box-Muller. Consumes two draws per call.
inline double gaussian01(std::mt19937_64& rng) {
    double u1 = static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace seasoncast
