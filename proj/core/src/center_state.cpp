#include "kmls/center_state.hpp"

#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "kmls/geometry.hpp"

namespace kmls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lexicographic (distance, slot) order; the tie rule that makes incremental
// updates agree with full rebuilds.
inline bool closer(double d_a, std::size_t s_a, double d_b, std::size_t s_b) {
    return d_a < d_b || (d_a == d_b && s_a < s_b);
}

} // namespace

CenterState CenterState::build(const PointSet& points, std::vector<std::size_t> centers) {
    if (centers.empty())
        throw std::invalid_argument("CenterState: need at least one center");
    std::unordered_set<std::size_t> seen;
    for (std::size_t c : centers) {
        if (c >= points.size())
            throw std::invalid_argument("CenterState: center index " + std::to_string(c) +
                                        " out of range");
        if (!seen.insert(c).second)
            throw std::invalid_argument("CenterState: duplicate center index " +
                                        std::to_string(c));
    }

    CenterState st;
    st.centers_ = std::move(centers);
    const std::size_t n = points.size();
    st.first_dist_.assign(n, kInf);
    st.first_slot_.assign(n, npos);
    st.second_dist_.assign(n, kInf);
    st.second_slot_.assign(n, npos);
    for (std::size_t i = 0; i < n; ++i)
        st.rescan_point(points, i);
    st.resum_total();
    return st;
}

void CenterState::rescan_point(const PointSet& points, std::size_t i) {
    auto p = points.row(i);
    double f = kInf, s = kInf;
    std::size_t fs = npos, ss = npos;
    for (std::size_t c = 0; c < centers_.size(); ++c) {
        const double d2 = squared_distance(p, points.row(centers_[c]));
        if (closer(d2, c, f, fs)) {
            s = f;
            ss = fs;
            f = d2;
            fs = c;
        } else if (closer(d2, c, s, ss)) {
            s = d2;
            ss = c;
        }
    }
    first_dist_[i] = f;
    first_slot_[i] = fs;
    second_dist_[i] = s;
    second_slot_[i] = ss;
}

void CenterState::resum_total() {
    double t = 0.0;
    for (double v : first_dist_) t += v;
    total_ = t;
}

void CenterState::insert(const PointSet& points, std::size_t point_index) {
    if (point_index >= points.size())
        throw std::invalid_argument("CenterState::insert: point index out of range");
    for (std::size_t c : centers_)
        if (c == point_index)
            throw std::invalid_argument("CenterState::insert: index already a center");

    const std::size_t slot = centers_.size();
    centers_.push_back(point_index);
    auto cp = points.row(point_index);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double d2 = squared_distance(points.row(i), cp);
        // The new slot is the highest, so ties always favor the incumbents.
        if (d2 < first_dist_[i]) {
            second_dist_[i] = first_dist_[i];
            second_slot_[i] = first_slot_[i];
            first_dist_[i] = d2;
            first_slot_[i] = slot;
        } else if (d2 < second_dist_[i]) {
            second_dist_[i] = d2;
            second_slot_[i] = slot;
        }
    }
    resum_total();
}

void CenterState::replace(const PointSet& points, std::size_t slot, std::size_t point_index) {
    if (slot >= centers_.size())
        throw std::invalid_argument("CenterState::replace: slot out of range");
    if (point_index >= points.size())
        throw std::invalid_argument("CenterState::replace: point index out of range");
    for (std::size_t c = 0; c < centers_.size(); ++c)
        if (centers_[c] == point_index && c != slot)
            throw std::invalid_argument("CenterState::replace: index already a center");

    centers_[slot] = point_index;
    auto cp = points.row(point_index);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (first_slot_[i] == slot || second_slot_[i] == slot) {
            rescan_point(points, i);
            continue;
        }
        const double d2 = squared_distance(points.row(i), cp);
        if (closer(d2, slot, first_dist_[i], first_slot_[i])) {
            second_dist_[i] = first_dist_[i];
            second_slot_[i] = first_slot_[i];
            first_dist_[i] = d2;
            first_slot_[i] = slot;
        } else if (closer(d2, slot, second_dist_[i], second_slot_[i])) {
            second_dist_[i] = d2;
            second_slot_[i] = slot;
        }
    }
    resum_total();
}

} // namespace kmls
