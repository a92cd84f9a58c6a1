#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kmls/point_set.hpp"

namespace kmls {

// A set of centers drawn from the input points (stored as point indices, so
// distinct slots may still coincide geometrically), plus for every point the
// squared distance and slot of its closest and second-closest center, plus
// the cached total cost.
//
// Ordering contract: whenever two centers are equally far from a point, the
// lower slot wins. Every cache path (full build, insert, replace) compares
// (distance, slot) lexicographically, so incremental maintenance lands on
// exactly the state a from-scratch rebuild would produce, slots included.
//
// Cost contract: total_cost() is the left-to-right sum of first_dist over
// point indices. Anything that updates the cache re-sums along that same
// order, never by incremental adjustment, so equal states carry bit-equal
// totals.
class CenterState {
public:
    // Builds the cache in O(n * k * d). Center indices must be in range and
    // pairwise distinct (as indices); geometric duplicates are allowed.
    static CenterState build(const PointSet& points, std::vector<std::size_t> centers);

    // Appends one center and folds it into the cache in O(n * d).
    void insert(const PointSet& points, std::size_t point_index);

    // Replaces the center at `slot` with another point. Points that had the
    // replaced slot as closest or second-closest are rescanned against all k
    // centers; everyone else merges the one new distance in O(d).
    void replace(const PointSet& points, std::size_t slot, std::size_t point_index);

    std::size_t k() const { return centers_.size(); }
    const std::vector<std::size_t>& centers() const { return centers_; }

    double total_cost() const { return total_; }

    double first_dist(std::size_t i) const { return first_dist_[i]; }
    std::size_t first_slot(std::size_t i) const { return first_slot_[i]; }
    // Second-closest distance is +inf (slot npos) while k == 1.
    double second_dist(std::size_t i) const { return second_dist_[i]; }
    std::size_t second_slot(std::size_t i) const { return second_slot_[i]; }

    std::span<const double> first_dists() const { return first_dist_; }
    std::span<const std::size_t> first_slots() const { return first_slot_; }
    std::span<const double> second_dists() const { return second_dist_; }

private:
    std::vector<std::size_t> centers_;
    std::vector<double> first_dist_;
    std::vector<std::size_t> first_slot_;
    std::vector<double> second_dist_;
    std::vector<std::size_t> second_slot_;
    double total_ = 0.0;

    void rescan_point(const PointSet& points, std::size_t i);
    void resum_total();
};

} // namespace kmls
