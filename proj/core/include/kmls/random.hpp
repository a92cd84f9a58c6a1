#pragma once

#include <cstdint>
#include <random>

namespace kmls {

// Deterministic randomness keyed by a (seed, stream) pair. The same pair
// yields the same draw sequence on every platform: the engine is
// std::mt19937_64, whose output the standard pins down bit for bit, and all
// derived draws below are built directly from raw 64-bit words instead of
// going through <random> distributions (those are implementation-defined).
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53 random mantissa bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, ..., n-1}, unbiased via rejection.
    // Throws std::invalid_argument when n == 0.
    std::size_t uniform_index(std::size_t n);

    // Standard normal deviate (Box-Muller on raw uniform words).
    double next_gaussian();

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace kmls
