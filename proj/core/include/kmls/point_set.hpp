#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace kmls {

// Slot / index sentinel used wherever "no value" has to be representable.
inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Dense row-major n x d coordinate matrix. Row i is point i; indices are
// stable for the lifetime of a run and every downstream structure refers to
// points by index. The same type doubles as a center coordinate list (k x d)
// where rows need not come from any input set.
class PointSet {
public:
    PointSet() = default;

    // Takes ownership of a flat row-major buffer. Throws std::invalid_argument
    // on size mismatch, n == 0, d == 0, or any non-finite coordinate.
    static PointSet from_rows(std::vector<double> data, std::size_t n, std::size_t d);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return d_; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * d_, d_};
    }

    const std::vector<double>& data() const { return data_; }

    // Number of distinct point locations. Coordinates compare numerically,
    // so -0.0 and 0.0 collapse.
    std::size_t distinct_count() const;

private:
    std::vector<double> data_;
    std::size_t n_ = 0;
    std::size_t d_ = 0;
};

} // namespace kmls
