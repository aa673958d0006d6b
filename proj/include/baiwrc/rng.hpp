#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace baiwrc {

// All randomness flows through mt19937_64, whose output sequence is fixed by
// the C++ standard. The transforms below are hand-rolled (instead of
// std::*_distribution, whose algorithms are implementation-defined) so that a
// given seed produces byte-identical results on every platform/stdlib.
using Rng = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller. Always consumes exactly two draws and keeps
// no cached spare, so the stream position after a call is deterministic.
inline double gaussian01(Rng& rng) {
    const double u1 = 1.0 - uniform01(rng);  // (0, 1], keeps log finite
    const double u2 = uniform01(rng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return radius * std::cos(6.283185307179586476925286766559 * u2);
}

// SplitMix64 finalizer; decorrelates per-trial seeds derived from
// (base_seed, index) so trial i's stream is independent of execution order.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
    std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace baiwrc
