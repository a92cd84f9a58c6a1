#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "kmls/center_state.hpp"
#include "kmls/point_set.hpp"

namespace kmls {

// A reference clustering to measure a center state against: cluster
// centroids, a full point assignment, and per-cluster / total costs of the
// points against their own centroid.
struct OptClustering {
    PointSet centroids;                    // k' x d
    std::vector<std::size_t> assignment;   // one cluster id per point
    std::vector<double> per_cluster_cost;  // cost(Q_j, centroid_j)
    double total_cost = 0.0;
    bool is_exact = false;  // true when produced by the exhaustive oracle

    std::size_t k() const { return centroids.size(); }
};

// Builds the clustering induced by an explicit assignment into k clusters.
// Every cluster id below k must occur at least once.
OptClustering clustering_from_assignment(const PointSet& points,
                                         std::span<const std::size_t> assignment,
                                         std::size_t k, bool is_exact = false);

// Reference from generator labels (or any caller-supplied ground truth).
OptClustering planted_reference(const PointSet& points,
                                std::span<const std::size_t> labels);

// Exhaustive optimum: enumerates every partition of the points into at most
// k nonempty parts and returns the cheapest, ties resolved toward the
// lexicographically smallest assignment vector. Only instances with
// n <= 12 and k <= 4 are accepted; anything larger throws OracleTooLarge.
OptClustering exact_opt(const PointSet& points, std::size_t k);

// Thresholds at which settledness is measured: powers of two from 8 up to
// k^0.3 (evaluated in exact integer arithmetic, so the boundary case is
// included). Empty when k < 1024.
using LegalBetaSet = std::vector<double>;
LegalBetaSet legal_betas(std::size_t k);

// For each beta, the number of reference clusters with no settling center.
// A center settles cluster j when the reference assigns that center's point
// to j and the center lies within (beta / |Q_j|) * cost(Q_j, centroid_j) of
// the centroid.
std::vector<std::pair<double, std::size_t>> settledness_report(
    const PointSet& points, const CenterState& state, const OptClustering& ref,
    std::span<const double> betas);

// Every reference centroid is assigned to its nearest center (ties to the
// lower slot). Centers claimed by exactly one centroid are matched (with
// that cluster as their mate); centers claimed by none are lonely.
struct Matching {
    std::vector<std::pair<std::size_t, std::size_t>> matched;  // (slot, cluster)
    std::vector<std::size_t> lonely;                           // slots
    std::vector<std::size_t> nearest_slot;                     // per cluster
};
Matching match_and_lonely(const PointSet& points, const CenterState& state,
                          const OptClustering& ref);

// Cost increase from dropping the center at `slot`, measured over all points
// except the mate's cluster for matched centers, over everything for lonely
// ones. Evaluated from the cache: points losing their closest center fall
// back to their second-closest. The slot must be matched (with this mate) or
// lonely; anything else is an argument error.
double reassignment_cost(const PointSet& points, const CenterState& state,
                         const OptClustering& ref, std::size_t slot,
                         std::optional<std::size_t> mate);

// Clusters whose current cost stays large even after discounting the
// reassignment cost of freeing a center and a 100x multiple of their own
// optimal cost. Matched clusters are judged against their mate's
// reassignment cost, unmatched ones against the cheapest lonely center.
struct GoodFlags {
    std::vector<bool> m_good;  // true only for matched clusters
    std::vector<bool> l_good;  // true only for unmatched clusters
    bool lonely_available = true;  // false when unmatched clusters exist but L is empty
};
GoodFlags gamma_good_flags(const PointSet& points, const CenterState& state,
                           const OptClustering& ref, double gamma);

// Fractions of cost(P, C) carried by the flagged clusters.
std::pair<double, double> good_mass_fractions(const PointSet& points,
                                              const CenterState& state,
                                              const OptClustering& ref,
                                              const GoodFlags& flags);

struct ApproxFactor {
    double value = 1.0;
    bool is_upper_bound = false;  // reference was planted, not exact
    bool is_infinite = false;     // reference cost zero, state cost positive
};
ApproxFactor approximation_factor(const CenterState& state, const OptClustering& ref);

// Everything above in one bundle, measured at a beta picked from the legal
// set to sit in [target/2, target) for target = min(k^0.3, alpha^(2/3)).
// When no legal beta fits (small k or small alpha) beta falls back to 8 and
// the fallback is flagged. Goodness uses gamma = sqrt(beta).
struct StructureReport {
    ApproxFactor alpha;
    double chosen_beta = 8.0;
    bool beta_fallback = false;
    std::vector<std::pair<double, std::size_t>> unsettled;  // per legal beta
    std::size_t unsettled_at_chosen = 0;
    std::vector<std::pair<std::size_t, std::size_t>> matched;  // (slot, cluster)
    std::vector<std::size_t> lonely;
    std::vector<std::pair<std::size_t, double>> reassign_costs;  // per slot in M or L
    std::vector<bool> m_good, l_good;
    bool lonely_available = true;
    double m_good_mass = 0.0, l_good_mass = 0.0;
    bool m_mass_bound_held = false, l_mass_bound_held = false;  // >= 1/500, recorded only
};
StructureReport structure_report(const PointSet& points, const CenterState& state,
                                 const OptClustering& ref);

} // namespace kmls
