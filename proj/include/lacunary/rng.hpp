#pragma once

#include <cstdint>

namespace lacunary {

/// Counter-based deterministic generator (SplitMix64 finalizer in counter
/// mode).  Draw i of stream `seed` is hash(seed, i); draws are independent
/// of call order, so work can be split across ranges without coordination.
/// The algorithm name recorded in reports is "splitmix64".
struct CounterRng {
    std::uint64_t seed = 0;

    static constexpr const char* kName = "splitmix64";

    std::uint64_t at(std::uint64_t counter) const {
        std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) from 53 bits of draw i.
    double uniform_at(std::uint64_t counter) const {
        return static_cast<double>(at(counter) >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n) by 128-bit multiply (n must be > 0); the
    /// modulo bias at n << 2^64 is far below anything observable here.
    std::uint64_t below_at(std::uint64_t counter, std::uint64_t n) const {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(at(counter)) * n) >> 64);
    }
};

}  // namespace lacunary
