#include "kmls/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kmls {

namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Collapse (seed, stream) into one engine seed. Two mixing rounds decorrelate
// nearby seeds and nearby stream ids from one another.
std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t z = splitmix64(s);
    s = z ^ (stream + 0x9E3779B97F4A7C15ULL);
    return splitmix64(s);
}

} // namespace

RandomSource::RandomSource(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream), gen_(mix(seed, stream)) {}

std::size_t RandomSource::uniform_index(std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("uniform_index: n must be positive");
    const std::uint64_t bound = n;
    // Reject draws from the incomplete top segment of the 64-bit range.
    std::uint64_t x, r;
    do {
        x = next_u64();
        r = x % bound;
    } while (x - r > std::uint64_t(0) - bound);
    return static_cast<std::size_t>(r);
}

double RandomSource::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = 1.0 - next_double();
    const double u2 = next_double();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = mag * std::sin(ang);
    has_spare_ = true;
    return mag * std::cos(ang);
}

} // namespace kmls
