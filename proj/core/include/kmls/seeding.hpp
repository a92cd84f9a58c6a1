#pragma once

#include <cstddef>

#include "kmls/center_state.hpp"
#include "kmls/point_set.hpp"
#include "kmls/random.hpp"

namespace kmls {

// k-means++ seeding: the first center uniform over points, each of the
// remaining k-1 drawn with probability proportional to the squared distance
// to the nearest chosen center. The cache is folded forward after each
// insertion, so one call costs O(n * k * d) total.
//
// Throws InfeasibleK when k exceeds the number of distinct point locations.
// If every remaining point coincides with a chosen center (impossible under
// that precondition, but kept safe for degenerate callers) the draw falls
// back to a uniform pick among non-center indices.
CenterState kmeanspp_seed(const PointSet& points, std::size_t k, RandomSource& rng);

} // namespace kmls
