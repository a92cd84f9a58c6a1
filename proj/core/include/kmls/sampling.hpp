#pragma once

#include <cstddef>

#include "kmls/center_state.hpp"
#include "kmls/random.hpp"

namespace kmls {

// Draws a point index with probability proportional to its cached squared
// distance to the nearest center: one uniform draw walked along the prefix
// sums of first_dist, in point-index order. Points at distance zero can
// never be selected. Throws ZeroMassError when total_cost() is zero.
std::size_t d2_sample(const CenterState& state, RandomSource& rng);

// Uniform draw over {0, ..., n-1}.
std::size_t uniform_sample(std::size_t n, RandomSource& rng);

} // namespace kmls
