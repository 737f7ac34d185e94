#pragma once

#include <cstdint>
#include <random>

namespace zdf {

// All randomness in the library flows through std::mt19937_64; experiment
// output records the identifier below so runs are attributable to one
// generator algorithm.
using Rng = std::mt19937_64;
inline constexpr const char* kRngAlgorithm = "mt19937_64";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Per-trial seed derivation: mixes the grid-point index and trial index
// into the master seed so every trial owns an independent stream and the
// same trial is reproducible in isolation.
inline std::uint64_t derive_trial_seed(std::uint64_t master, std::uint64_t point_index,
                                       std::uint64_t trial_index) {
    return splitmix64(master ^ splitmix64((point_index << 32) | trial_index));
}

}  // namespace zdf
