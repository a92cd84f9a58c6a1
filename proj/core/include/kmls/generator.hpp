#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "kmls/point_set.hpp"
#include "kmls/random.hpp"

namespace kmls {

// Gaussian blobs around k centers whose pairwise distance is at least
// separation * scatter (centers are rejection-sampled inside a cube that
// grows until the spacing fits).
struct GaussianMixtureSpec {
    std::size_t k = 1;
    std::size_t n = 1;
    std::size_t d = 1;
    double separation = 10.0;
    double scatter = 1.0;
};

// Blobs at the corners of the unit simplex in k dimensions (pairwise corner
// distance sqrt(2)). scatter = 0 produces exact duplicates at each corner.
struct SimplexCornersSpec {
    std::size_t k = 2;
    std::size_t n = 2;
    double scatter = 0.0;
};

// Uniform noise in [0, 1)^d; carries no planted labels.
struct UniformCubeSpec {
    std::size_t n = 1;
    std::size_t d = 1;
};

using GeneratorSpec = std::variant<GaussianMixtureSpec, SimplexCornersSpec, UniformCubeSpec>;

struct GeneratedInstance {
    PointSet points;
    std::vector<std::size_t> labels;  // empty when the spec plants nothing
    PointSet planted_centers;         // generating locations (empty likewise)
};

GeneratedInstance generate_instance(const GeneratorSpec& spec, RandomSource& rng);

// Parses "name:key=value,key=value,...", e.g.
//   gaussian_mixture:k=16,n=1600,d=8,separation=10,scatter=1
//   simplex_corners:k=4,n=400,scatter=0
//   uniform_cube:n=100,d=2
// Unknown names, unknown keys, or malformed values raise
// std::invalid_argument.
GeneratorSpec parse_generator_spec(const std::string& text);

} // namespace kmls
