#pragma once

#include <cstdint>

namespace ecocut {

// splitmix64: tiny, bit-stable across platforms. Stream contract matters:
// generated graphs and restart partitions must reproduce exactly from a seed.
class splitmix64 {
public:
    explicit splitmix64(std::uint64_t seed) : state_(seed) {}

    // Independent stream for a (seed, index) pair, e.g. one per bisection trial.
    static splitmix64 stream(std::uint64_t seed, std::uint64_t index) {
        return splitmix64(mix(seed + 0x9E3779B97F4A7C15ULL * (index + 1)));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound); bound > 0. Modulo bias is negligible for desk-scale
    // bounds and keeps the stream layout simple and documented.
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

} // namespace ecocut
