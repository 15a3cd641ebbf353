#pragma once

// Counter-based randomness: every draw is a pure function of (key, counter), so
// replicates and points can be generated in any order or in parallel.

#include <cstdint>

namespace extfactor {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t counter_hash(std::uint64_t key, std::uint64_t counter) noexcept {
    return mix64(key ^ mix64(counter ^ 0xD1B54A32D192ED03ULL));
}

/// Seed for replicate `index` under a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return counter_hash(mix64(master), index);
}

/// Top 53 bits mapped to [0, 1).
constexpr double to_unit_interval(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace extfactor
