// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

namespace phrect {

/// splitmix64: tiny, seedable, identical on every platform. Used for the
/// randomized property checks so reports reproduce bit-exactly from a seed.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// uniform in [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    /// uniform integer in [0, n)
    int next_below(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }
};

}  // namespace phrect
