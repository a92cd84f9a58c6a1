#include "kmls/geometry.hpp"

#include <numeric>
#include <stdexcept>

namespace kmls {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("squared_distance: dimension mismatch");
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

namespace {

double nearest_center_dist2(std::span<const double> p, const PointSet& centers) {
    double best = squared_distance(p, centers.row(0));
    for (std::size_t c = 1; c < centers.size(); ++c) {
        const double d2 = squared_distance(p, centers.row(c));
        if (d2 < best) best = d2;
    }
    return best;
}

} // namespace

double cost(const PointSet& points, const PointSet& centers) {
    if (centers.size() == 0)
        throw std::invalid_argument("cost: center set is empty");
    if (centers.dim() != points.dim())
        throw std::invalid_argument("cost: dimension mismatch");
    double total = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        total += nearest_center_dist2(points.row(i), centers);
    return total;
}

double cost(const PointSet& points, std::span<const std::size_t> subset,
            const PointSet& centers) {
    if (centers.size() == 0)
        throw std::invalid_argument("cost: center set is empty");
    if (centers.dim() != points.dim())
        throw std::invalid_argument("cost: dimension mismatch");
    double total = 0.0;
    for (std::size_t i : subset)
        total += nearest_center_dist2(points.row(i), centers);
    return total;
}

double cost(const PointSet& points, std::span<const std::size_t> subset,
            std::span<const double> center) {
    double total = 0.0;
    for (std::size_t i : subset)
        total += squared_distance(points.row(i), center);
    return total;
}

std::vector<double> centroid(const PointSet& points, std::span<const std::size_t> subset) {
    if (subset.empty())
        throw std::invalid_argument("centroid: subset is empty");
    std::vector<double> mu(points.dim(), 0.0);
    for (std::size_t i : subset) {
        auto r = points.row(i);
        for (std::size_t j = 0; j < mu.size(); ++j) mu[j] += r[j];
    }
    for (double& v : mu) v /= static_cast<double>(subset.size());
    return mu;
}

double decomposition_residual(const PointSet& points, std::span<const std::size_t> subset,
                              std::span<const double> c) {
    const std::vector<double> mu = centroid(points, subset);
    const double direct = cost(points, subset, c);
    const double shift =
        static_cast<double>(subset.size()) * squared_distance(c, {mu.data(), mu.size()});
    const double around_mean = cost(points, subset, {mu.data(), mu.size()});
    return direct - shift - around_mean;
}

} // namespace kmls
