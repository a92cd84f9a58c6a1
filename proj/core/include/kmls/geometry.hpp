#pragma once

#include <span>
#include <vector>

#include "kmls/point_set.hpp"

namespace kmls {

// All accumulations below run in a fixed order (coordinates ascending, then
// point index ascending) so repeated evaluation is bit-reproducible.

// Squared Euclidean distance; zero iff a == b exactly.
double squared_distance(std::span<const double> a, std::span<const double> b);

// Sum over all points of the squared distance to the nearest row of centers.
double cost(const PointSet& points, const PointSet& centers);

// Same, restricted to the given point indices (in the given order).
double cost(const PointSet& points, std::span<const std::size_t> subset,
            const PointSet& centers);

// Cost of a subset against a single center location.
double cost(const PointSet& points, std::span<const std::size_t> subset,
            std::span<const double> center);

// Coordinate-wise mean of a nonempty subset.
std::vector<double> centroid(const PointSet& points, std::span<const std::size_t> subset);

// cost(Q, c) - |Q| * ||c - centroid(Q)||^2 - cost(Q, centroid(Q)).
// Identically zero in exact arithmetic for any subset Q and location c.
double decomposition_residual(const PointSet& points, std::span<const std::size_t> subset,
                              std::span<const double> c);

} // namespace kmls
