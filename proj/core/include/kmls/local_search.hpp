#pragma once

#include <cstddef>
#include <vector>

#include "kmls/center_state.hpp"
#include "kmls/point_set.hpp"
#include "kmls/random.hpp"

namespace kmls {

// Result of evaluating the best single swap for a candidate point.
struct BestSwap {
    std::size_t slot = npos;  // center slot whose removal is cheapest
    double cost = 0.0;        // cost(P, C - slot + candidate)
};

// Outcome of one sampled swap step.
struct SwapOutcome {
    std::size_t sampled_point = npos;  // npos when the state had zero mass
    std::size_t removed_slot = npos;   // npos when not accepted
    double cost_before = 0.0;
    double new_cost = 0.0;   // equals cost_before when not accepted
    bool accepted = false;   // accepted implies new_cost < cost_before
    bool converged = false;  // zero sampling mass: every point sits on a center
};

// One row per step; row 0 carries the starting cost.
struct StepRecord {
    std::size_t step = 0;
    double cost = 0.0;
    bool accepted = false;
    std::size_t sampled = npos;
    std::size_t removed = npos;
    double elapsed_ms = 0.0;
};

struct RunTrajectory {
    std::vector<StepRecord> records;
    bool converged = false;

    double initial_cost() const { return records.front().cost; }
    double final_cost() const { return records.back().cost; }
};

// Evaluates all k candidate removals for inserting point p, in one pass over
// the cache: O(n * d) for the distances to p, then O(n + k) for the scores.
// Ties between slots break toward the lower slot. The returned cost is
// re-accumulated point by point for the winning slot, along the same order
// cost totals use, so it matches a from-scratch recomputation bit for bit.
BestSwap best_swap(const PointSet& points, const CenterState& state, std::size_t p);

// Samples a point by d2_sample, finds its best swap, and applies it only on
// strict improvement. On zero sampling mass returns converged = true and
// leaves the state untouched.
SwapOutcome local_search_step(const PointSet& points, CenterState& state, RandomSource& rng);

// Applies local_search_step `steps` times, stopping early on convergence.
RunTrajectory run_local_search(const PointSet& points, CenterState& state,
                               std::size_t steps, RandomSource& rng);

// Step budget for a target quality parameter: ceil(epsilon * k), at least 1.
// Requires 0 < epsilon <= 1.
std::size_t steps_from_epsilon(double epsilon, std::size_t k);

} // namespace kmls
