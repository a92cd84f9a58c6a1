#include "kmls/seeding.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "kmls/errors.hpp"
#include "kmls/sampling.hpp"

namespace kmls {

namespace {

std::size_t uniform_non_center(const PointSet& points, const CenterState& state,
                               RandomSource& rng) {
    std::vector<char> is_center(points.size(), 0);
    for (std::size_t c : state.centers()) is_center[c] = 1;
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (!is_center[i]) candidates.push_back(i);
    if (candidates.empty())
        throw ZeroMassError("kmeanspp_seed: no candidate points left");
    return candidates[rng.uniform_index(candidates.size())];
}

} // namespace

CenterState kmeanspp_seed(const PointSet& points, std::size_t k, RandomSource& rng) {
    if (k == 0)
        throw std::invalid_argument("kmeanspp_seed: k must be positive");
    const std::size_t distinct = points.distinct_count();
    if (k > distinct)
        throw InfeasibleK("kmeanspp_seed: k = " + std::to_string(k) + " exceeds " +
                          std::to_string(distinct) + " distinct point locations");

    auto state = CenterState::build(points, {uniform_sample(points.size(), rng)});
    while (state.k() < k) {
        std::size_t next;
        try {
            next = d2_sample(state, rng);
        } catch (const ZeroMassError&) {
            next = uniform_non_center(points, state, rng);
        }
        state.insert(points, next);
    }
    return state;
}

} // namespace kmls
