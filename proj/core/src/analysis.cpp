#include "kmls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "kmls/errors.hpp"
#include "kmls/geometry.hpp"

namespace kmls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared scoring core: centroid sums, then per-cluster costs, both in point
// index order. The oracle's ranking, planted references, and any probe
// comparison therefore accumulate along the identical path.
double score_assignment(const PointSet& points, std::span<const std::size_t> assignment,
                        std::size_t k, std::vector<double>& mu,
                        std::vector<std::size_t>& counts, std::vector<double>& per_cost) {
    const std::size_t n = points.size();
    const std::size_t d = points.dim();
    mu.assign(k * d, 0.0);
    counts.assign(k, 0);
    per_cost.assign(k, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = assignment[i];
        ++counts[c];
        auto r = points.row(i);
        double* m = mu.data() + c * d;
        for (std::size_t j = 0; j < d; ++j) m[j] += r[j];
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] == 0) continue;
        double* m = mu.data() + c * d;
        for (std::size_t j = 0; j < d; ++j) m[j] /= static_cast<double>(counts[c]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = assignment[i];
        per_cost[c] += squared_distance(points.row(i), {mu.data() + c * d, d});
    }
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) total += per_cost[c];
    return total;
}

// Per-cluster cost of the points against the current centers, grouped by the
// reference assignment.
std::vector<double> cluster_costs_against_state(const CenterState& state,
                                                const OptClustering& ref) {
    std::vector<double> out(ref.k(), 0.0);
    auto first = state.first_dists();
    for (std::size_t i = 0; i < first.size(); ++i) out[ref.assignment[i]] += first[i];
    return out;
}

// reassignment_cost without the membership validation, for callers that
// already hold the matching.
double reassignment_sum(const CenterState& state, const OptClustering& ref,
                        std::size_t slot, std::optional<std::size_t> mate) {
    double removed = 0.0, kept = 0.0;
    const std::size_t n = state.first_dists().size();
    for (std::size_t i = 0; i < n; ++i) {
        if (mate && ref.assignment[i] == *mate) continue;
        const double f = state.first_dist(i);
        removed += state.first_slot(i) == slot ? state.second_dist(i) : f;
        kept += f;
    }
    return removed - kept;
}

} // namespace

OptClustering clustering_from_assignment(const PointSet& points,
                                         std::span<const std::size_t> assignment,
                                         std::size_t k, bool is_exact) {
    if (assignment.size() != points.size())
        throw std::invalid_argument("clustering_from_assignment: one label per point required");
    if (k == 0)
        throw std::invalid_argument("clustering_from_assignment: k must be positive");
    for (std::size_t a : assignment)
        if (a >= k)
            throw std::invalid_argument("clustering_from_assignment: label out of range");

    std::vector<double> mu;
    std::vector<std::size_t> counts;
    std::vector<double> per_cost;
    const double total = score_assignment(points, assignment, k, mu, counts, per_cost);
    for (std::size_t c = 0; c < k; ++c)
        if (counts[c] == 0)
            throw std::invalid_argument("clustering_from_assignment: cluster " +
                                        std::to_string(c) + " is empty");

    OptClustering ref;
    ref.centroids = PointSet::from_rows(std::move(mu), k, points.dim());
    ref.assignment.assign(assignment.begin(), assignment.end());
    ref.per_cluster_cost = std::move(per_cost);
    ref.total_cost = total;
    ref.is_exact = is_exact;
    return ref;
}

OptClustering planted_reference(const PointSet& points,
                                std::span<const std::size_t> labels) {
    if (labels.empty())
        throw std::invalid_argument("planted_reference: instance carries no labels");
    std::size_t k = 0;
    for (std::size_t l : labels) k = std::max(k, l + 1);
    return clustering_from_assignment(points, labels, k, /*is_exact=*/false);
}

OptClustering exact_opt(const PointSet& points, std::size_t k) {
    if (k == 0)
        throw std::invalid_argument("exact_opt: k must be positive");
    if (points.size() > 12 || k > 4)
        throw OracleTooLarge("exact_opt: limited to n <= 12 and k <= 4, got n = " +
                             std::to_string(points.size()) + ", k = " + std::to_string(k));

    const std::size_t n = points.size();
    std::vector<std::size_t> a(n, 0);
    std::vector<std::size_t> best_a;
    double best = kInf;

    std::vector<double> mu;
    std::vector<std::size_t> counts;
    std::vector<double> per_cost;

    // Restricted-growth enumeration visits each partition once, in
    // lexicographic assignment order; keeping strict improvements only makes
    // the first minimum (the lexicographically smallest) the winner.
    auto visit = [&](auto&& self, std::size_t pos, std::size_t used) -> void {
        if (pos == n) {
            const double s = score_assignment(points, a, used, mu, counts, per_cost);
            if (s < best) {
                best = s;
                best_a = a;
            }
            return;
        }
        const std::size_t top = std::min(used, k - 1);
        for (std::size_t lab = 0; lab <= top; ++lab) {
            a[pos] = lab;
            self(self, pos + 1, std::max(used, lab + 1));
        }
    };
    visit(visit, 1, 1);

    std::size_t parts = 0;
    for (std::size_t lab : best_a) parts = std::max(parts, lab + 1);
    return clustering_from_assignment(points, best_a, parts, /*is_exact=*/true);
}

LegalBetaSet legal_betas(std::size_t k) {
    LegalBetaSet out;
    const unsigned __int128 k3 =
        static_cast<unsigned __int128>(k) * k * static_cast<unsigned __int128>(k);
    for (unsigned i = 3; 10 * i < 127; ++i) {
        if ((static_cast<unsigned __int128>(1) << (10 * i)) > k3) break;
        out.push_back(std::ldexp(1.0, static_cast<int>(i)));
    }
    return out;
}

std::vector<std::pair<double, std::size_t>> settledness_report(
    const PointSet& points, const CenterState& state, const OptClustering& ref,
    std::span<const double> betas) {
    const std::size_t kk = ref.k();
    std::vector<std::size_t> sizes(kk, 0);
    for (std::size_t l : ref.assignment) ++sizes[l];

    // Closest member center to each cluster's centroid; +inf when the
    // reference puts no center's point in that cluster.
    std::vector<double> best_r(kk, kInf);
    for (std::size_t c : state.centers()) {
        const std::size_t cl = ref.assignment[c];
        const double d2 = squared_distance(points.row(c), ref.centroids.row(cl));
        best_r[cl] = std::min(best_r[cl], d2);
    }

    std::vector<std::pair<double, std::size_t>> out;
    out.reserve(betas.size());
    for (double beta : betas) {
        std::size_t unsettled = 0;
        for (std::size_t j = 0; j < kk; ++j) {
            const double radius =
                beta / static_cast<double>(sizes[j]) * ref.per_cluster_cost[j];
            if (!(best_r[j] <= radius)) ++unsettled;
        }
        out.emplace_back(beta, unsettled);
    }
    return out;
}

Matching match_and_lonely(const PointSet& points, const CenterState& state,
                          const OptClustering& ref) {
    const std::size_t kk = ref.k();
    Matching m;
    m.nearest_slot.assign(kk, npos);

    std::vector<std::size_t> claims(state.k(), 0);
    std::vector<std::size_t> claimant(state.k(), npos);
    for (std::size_t j = 0; j < kk; ++j) {
        auto mu = ref.centroids.row(j);
        double best = kInf;
        std::size_t best_slot = npos;
        for (std::size_t s = 0; s < state.k(); ++s) {
            const double d2 = squared_distance(mu, points.row(state.centers()[s]));
            if (d2 < best) {
                best = d2;
                best_slot = s;
            }
        }
        m.nearest_slot[j] = best_slot;
        ++claims[best_slot];
        claimant[best_slot] = j;
    }
    for (std::size_t s = 0; s < state.k(); ++s) {
        if (claims[s] == 1)
            m.matched.emplace_back(s, claimant[s]);
        else if (claims[s] == 0)
            m.lonely.push_back(s);
    }
    return m;
}

double reassignment_cost(const PointSet& points, const CenterState& state,
                         const OptClustering& ref, std::size_t slot,
                         std::optional<std::size_t> mate) {
    const Matching m = match_and_lonely(points, state, ref);
    if (mate) {
        const bool ok = std::find(m.matched.begin(), m.matched.end(),
                                  std::make_pair(slot, *mate)) != m.matched.end();
        if (!ok)
            throw std::invalid_argument("reassignment_cost: slot is not matched to that cluster");
    } else {
        if (std::find(m.lonely.begin(), m.lonely.end(), slot) == m.lonely.end())
            throw std::invalid_argument("reassignment_cost: slot is not lonely");
    }
    return reassignment_sum(state, ref, slot, mate);
}

GoodFlags gamma_good_flags(const PointSet& points, const CenterState& state,
                           const OptClustering& ref, double gamma) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("gamma_good_flags: gamma must be positive");

    const Matching m = match_and_lonely(points, state, ref);
    const std::vector<double> cost_q = cluster_costs_against_state(state, ref);
    const double threshold =
        gamma / (1e4 * static_cast<double>(state.k())) * state.total_cost();

    GoodFlags flags;
    flags.m_good.assign(ref.k(), false);
    flags.l_good.assign(ref.k(), false);

    std::vector<bool> is_matched_cluster(ref.k(), false);
    for (auto [slot, cluster] : m.matched) {
        is_matched_cluster[cluster] = true;
        const double reassign = reassignment_sum(state, ref, slot, cluster);
        flags.m_good[cluster] =
            cost_q[cluster] - reassign - 100.0 * ref.per_cluster_cost[cluster] > threshold;
    }

    double min_lonely = kInf;
    for (std::size_t slot : m.lonely)
        min_lonely = std::min(min_lonely, reassignment_sum(state, ref, slot, std::nullopt));

    for (std::size_t j = 0; j < ref.k(); ++j) {
        if (is_matched_cluster[j]) continue;
        if (m.lonely.empty()) {
            flags.lonely_available = false;
            continue;
        }
        flags.l_good[j] =
            cost_q[j] - min_lonely - 100.0 * ref.per_cluster_cost[j] > threshold;
    }
    return flags;
}

std::pair<double, double> good_mass_fractions(const PointSet& points,
                                              const CenterState& state,
                                              const OptClustering& ref,
                                              const GoodFlags& flags) {
    (void)points;
    const std::vector<double> cost_q = cluster_costs_against_state(state, ref);
    const double total = state.total_cost();
    if (!(total > 0.0)) return {0.0, 0.0};

    double m_mass = 0.0, l_mass = 0.0;
    for (std::size_t j = 0; j < ref.k(); ++j) {
        if (flags.m_good[j]) m_mass += cost_q[j];
        if (flags.l_good[j]) l_mass += cost_q[j];
    }
    return {m_mass / total, l_mass / total};
}

ApproxFactor approximation_factor(const CenterState& state, const OptClustering& ref) {
    ApproxFactor f;
    f.is_upper_bound = !ref.is_exact;
    if (ref.total_cost > 0.0) {
        f.value = state.total_cost() / ref.total_cost;
    } else if (state.total_cost() > 0.0) {
        f.value = kInf;
        f.is_infinite = true;
    } else {
        f.value = 1.0;
    }
    return f;
}

StructureReport structure_report(const PointSet& points, const CenterState& state,
                                 const OptClustering& ref) {
    StructureReport rep;
    rep.alpha = approximation_factor(state, ref);

    // Pick the measurement scale: the largest legal beta inside
    // [target/2, target); fall back to 8 when the window is empty.
    const double alpha = rep.alpha.value;
    const double k_cap = std::pow(static_cast<double>(state.k()), 0.3);
    const double target =
        rep.alpha.is_infinite ? k_cap : std::min(k_cap, std::pow(alpha, 2.0 / 3.0));
    const LegalBetaSet betas = legal_betas(state.k());
    rep.chosen_beta = 8.0;
    rep.beta_fallback = true;
    for (auto it = betas.rbegin(); it != betas.rend(); ++it) {
        if (*it < target && 2.0 * *it >= target) {
            rep.chosen_beta = *it;
            rep.beta_fallback = false;
            break;
        }
    }

    rep.unsettled = settledness_report(points, state, ref, betas);
    const double chosen[] = {rep.chosen_beta};
    rep.unsettled_at_chosen = settledness_report(points, state, ref, chosen)[0].second;

    const Matching m = match_and_lonely(points, state, ref);
    rep.matched = m.matched;
    rep.lonely = m.lonely;
    for (auto [slot, cluster] : m.matched)
        rep.reassign_costs.emplace_back(slot, reassignment_sum(state, ref, slot, cluster));
    for (std::size_t slot : m.lonely)
        rep.reassign_costs.emplace_back(slot, reassignment_sum(state, ref, slot, std::nullopt));
    std::sort(rep.reassign_costs.begin(), rep.reassign_costs.end());

    const GoodFlags flags = gamma_good_flags(points, state, ref, std::sqrt(rep.chosen_beta));
    rep.m_good = flags.m_good;
    rep.l_good = flags.l_good;
    rep.lonely_available = flags.lonely_available;

    const auto [m_mass, l_mass] = good_mass_fractions(points, state, ref, flags);
    rep.m_good_mass = m_mass;
    rep.l_good_mass = l_mass;
    rep.m_mass_bound_held = m_mass >= 1.0 / 500.0;
    rep.l_mass_bound_held = l_mass >= 1.0 / 500.0;
    return rep;
}

} // namespace kmls
