#include "kmls/point_set.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace kmls {

PointSet PointSet::from_rows(std::vector<double> data, std::size_t n, std::size_t d) {
    if (n == 0 || d == 0)
        throw std::invalid_argument("point set must have n >= 1 and d >= 1");
    if (data.size() != n * d)
        throw std::invalid_argument("coordinate buffer has " + std::to_string(data.size()) +
                                    " values, expected " + std::to_string(n * d));
    for (double v : data)
        if (!std::isfinite(v))
            throw std::invalid_argument("coordinates must be finite");

    PointSet ps;
    ps.data_ = std::move(data);
    ps.n_ = n;
    ps.d_ = d;
    return ps;
}

std::size_t PointSet::distinct_count() const {
    // Hash rows by their byte image after normalizing -0.0 to 0.0 so the
    // comparison matches numeric equality (inputs are finite, so byte
    // equality is then exact coordinate equality).
    std::vector<double> norm(d_);
    std::unordered_set<std::string> seen;
    seen.reserve(n_ * 2);
    for (std::size_t i = 0; i < n_; ++i) {
        auto r = row(i);
        for (std::size_t j = 0; j < d_; ++j)
            norm[j] = r[j] == 0.0 ? 0.0 : r[j];
        seen.emplace(reinterpret_cast<const char*>(norm.data()), d_ * sizeof(double));
    }
    return seen.size();
}

} // namespace kmls
