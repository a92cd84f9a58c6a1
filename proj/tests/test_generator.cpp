#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

#include "kmls/generator.hpp"
#include "kmls/geometry.hpp"
#include "kmls/random.hpp"
#include "oracles.hpp"

using namespace kmls;

TEST_SUITE("generator") {

TEST_CASE("spec strings parse into the right shapes") {
    const auto g = std::get<GaussianMixtureSpec>(
        parse_generator_spec("gaussian_mixture:k=16,n=1600,d=8,separation=12,scatter=0.5"));
    CHECK(g.k == 16);
    CHECK(g.n == 1600);
    CHECK(g.d == 8);
    CHECK(g.separation == 12.0);
    CHECK(g.scatter == 0.5);

    const auto defaults =
        std::get<GaussianMixtureSpec>(parse_generator_spec("gaussian_mixture:k=2,n=10,d=1"));
    CHECK(defaults.separation == 10.0);
    CHECK(defaults.scatter == 1.0);

    const auto s = std::get<SimplexCornersSpec>(
        parse_generator_spec("simplex_corners:k=3,n=30,scatter=0.25"));
    CHECK(s.k == 3);
    CHECK(s.n == 30);
    CHECK(s.scatter == 0.25);

    const auto c = std::get<UniformCubeSpec>(parse_generator_spec("uniform_cube:n=50,d=7"));
    CHECK(c.n == 50);
    CHECK(c.d == 7);
}

TEST_CASE("malformed spec strings are rejected") {
    CHECK_THROWS_AS((void)parse_generator_spec("blobs:k=3"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_generator_spec("gaussian_mixture:q=1"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_generator_spec("gaussian_mixture:k=abc"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)parse_generator_spec("uniform_cube:k=3"), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_generator_spec(""), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_generator_spec("gaussian_mixture"), std::invalid_argument);
}

TEST_CASE("infeasible shapes are rejected at generation") {
    RandomSource rng(61, 0);
    GaussianMixtureSpec g;
    g.k = 10;
    g.n = 5; // fewer points than clusters
    g.d = 2;
    CHECK_THROWS_AS((void)generate_instance(g, rng), std::invalid_argument);

    SimplexCornersSpec s;
    s.k = 1;
    s.n = 5;
    CHECK_THROWS_AS((void)generate_instance(s, rng), std::invalid_argument);
}

TEST_CASE("blob instances carry labels, planted centers and spacing") {
    RandomSource rng(62, 0);
    GaussianMixtureSpec spec;
    spec.k = 6;
    spec.n = 500;
    spec.d = 3;
    spec.separation = 20.0;
    const GeneratedInstance inst = generate_instance(spec, rng);

    CHECK(inst.points.size() == 500);
    CHECK(inst.points.dim() == 3);
    CHECK(inst.labels.size() == 500);
    CHECK(inst.planted_centers.size() == 6);
    CHECK(inst.planted_centers.dim() == 3);

    std::vector<std::size_t> sizes(6, 0);
    for (std::size_t l : inst.labels) {
        REQUIRE(l < 6);
        ++sizes[l];
    }
    const auto [lo, hi] = std::minmax_element(sizes.begin(), sizes.end());
    CHECK(*hi - *lo <= 1);

    const double gap2 = 20.0 * 20.0;
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = a + 1; b < 6; ++b)
            CHECK(squared_distance(inst.planted_centers.row(a),
                                   inst.planted_centers.row(b)) >= gap2);

    // With this much separation every point stays nearest its own blob.
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t c = 0; c < 6; ++c) {
            const double d2 =
                squared_distance(inst.points.row(i), inst.planted_centers.row(c));
            if (d2 < best) {
                best = d2;
                arg = c;
            }
        }
        CHECK(arg == inst.labels[i]);
    }
}

TEST_CASE("simplex corners with zero scatter duplicate the corners exactly") {
    RandomSource rng(63, 0);
    SimplexCornersSpec spec;
    spec.k = 4;
    spec.n = 10;
    const GeneratedInstance inst = generate_instance(spec, rng);

    CHECK(inst.points.dim() == 4);
    CHECK(inst.points.distinct_count() == 4);
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
        auto r = inst.points.row(i);
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(r[j] == (j == inst.labels[i] ? 1.0 : 0.0));
    }
}

TEST_CASE("uniform noise fills the unit cube without labels") {
    RandomSource rng(64, 0);
    UniformCubeSpec spec;
    spec.n = 300;
    spec.d = 2;
    const GeneratedInstance inst = generate_instance(spec, rng);
    CHECK(inst.labels.empty());
    CHECK(inst.planted_centers.size() == 0);
    for (double v : inst.points.data()) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("generation is reproducible per seed and stream") {
    GaussianMixtureSpec spec;
    spec.k = 3;
    spec.n = 60;
    spec.d = 2;
    RandomSource a(65, 4), b(65, 4), c(65, 5);
    const GeneratedInstance ia = generate_instance(spec, a);
    const GeneratedInstance ib = generate_instance(spec, b);
    const GeneratedInstance ic = generate_instance(spec, c);
    CHECK(ia.points.data() == ib.points.data());
    CHECK(ia.labels == ib.labels);
    CHECK(ia.points.data() != ic.points.data());
}

} // TEST_SUITE
