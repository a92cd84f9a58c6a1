#include "kmls/sampling.hpp"

#include "kmls/errors.hpp"

namespace kmls {

std::size_t d2_sample(const CenterState& state, RandomSource& rng) {
    const double total = state.total_cost();
    if (!(total > 0.0))
        throw ZeroMassError("d2_sample: all points coincide with centers");

    const double target = rng.next_double() * total;
    auto weights = state.first_dists();
    double acc = 0.0;
    std::size_t last_positive = npos;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = weights[i];
        if (w > 0.0) last_positive = i;
        acc += w;
        if (target < acc) return i;
    }
    // target == total can occur when u is within one ulp of 1; the prefix walk
    // then falls off the end. Hand the draw to the final carrier of mass.
    return last_positive;
}

std::size_t uniform_sample(std::size_t n, RandomSource& rng) {
    return rng.uniform_index(n);
}

} // namespace kmls
