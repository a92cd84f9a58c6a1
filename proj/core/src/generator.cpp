#include "kmls/generator.hpp"

#include <charconv>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "kmls/geometry.hpp"

namespace kmls {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Cluster sizes: n split as evenly as possible, remainder on the first few.
std::vector<std::size_t> split_sizes(std::size_t n, std::size_t k) {
    std::vector<std::size_t> sizes(k, n / k);
    for (std::size_t i = 0; i < n % k; ++i) ++sizes[i];
    return sizes;
}

// k locations in [0, side)^d with pairwise squared distance >= min_d2,
// rejection sampled; the cube grows whenever a round of attempts fails.
std::vector<double> spaced_locations(std::size_t k, std::size_t d, double min_d2,
                                     double side, RandomSource& rng) {
    std::vector<double> centers;
    centers.reserve(k * d);
    std::vector<double> cand(d);
    while (true) {
        centers.clear();
        bool ok = true;
        for (std::size_t c = 0; c < k && ok; ++c) {
            bool placed = false;
            for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
                for (std::size_t j = 0; j < d; ++j) cand[j] = rng.next_double() * side;
                placed = true;
                for (std::size_t o = 0; o < c && placed; ++o) {
                    std::span<const double> other{centers.data() + o * d, d};
                    if (squared_distance(cand, other) < min_d2) placed = false;
                }
            }
            if (!placed) ok = false;
            else centers.insert(centers.end(), cand.begin(), cand.end());
        }
        if (ok) return centers;
        side *= 1.5;
    }
}

GeneratedInstance gen_gaussian(const GaussianMixtureSpec& s, RandomSource& rng) {
    require(s.k >= 1 && s.n >= s.k && s.d >= 1,
            "gaussian_mixture: need k >= 1, d >= 1, n >= k");
    require(s.separation >= 0.0 && s.scatter >= 0.0,
            "gaussian_mixture: separation and scatter must be nonnegative");

    const double gap = s.separation * s.scatter;
    const double side =
        std::max(gap, 1.0) * (std::ceil(std::pow(double(s.k), 1.0 / double(s.d))) + 1.0);
    std::vector<double> centers = spaced_locations(s.k, s.d, gap * gap, side, rng);

    const std::vector<std::size_t> sizes = split_sizes(s.n, s.k);
    std::vector<double> data;
    data.reserve(s.n * s.d);
    std::vector<std::size_t> labels;
    labels.reserve(s.n);
    for (std::size_t c = 0; c < s.k; ++c) {
        for (std::size_t i = 0; i < sizes[c]; ++i) {
            for (std::size_t j = 0; j < s.d; ++j)
                data.push_back(centers[c * s.d + j] + s.scatter * rng.next_gaussian());
            labels.push_back(c);
        }
    }

    GeneratedInstance out;
    out.points = PointSet::from_rows(std::move(data), s.n, s.d);
    out.labels = std::move(labels);
    out.planted_centers = PointSet::from_rows(std::move(centers), s.k, s.d);
    return out;
}

GeneratedInstance gen_simplex(const SimplexCornersSpec& s, RandomSource& rng) {
    require(s.k >= 2 && s.n >= s.k, "simplex_corners: need k >= 2 and n >= k");
    require(s.scatter >= 0.0, "simplex_corners: scatter must be nonnegative");

    const std::size_t d = s.k;
    std::vector<double> corners(s.k * d, 0.0);
    for (std::size_t c = 0; c < s.k; ++c) corners[c * d + c] = 1.0;

    const std::vector<std::size_t> sizes = split_sizes(s.n, s.k);
    std::vector<double> data;
    data.reserve(s.n * d);
    std::vector<std::size_t> labels;
    labels.reserve(s.n);
    for (std::size_t c = 0; c < s.k; ++c) {
        for (std::size_t i = 0; i < sizes[c]; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const double noise = s.scatter == 0.0 ? 0.0 : s.scatter * rng.next_gaussian();
                data.push_back(corners[c * d + j] + noise);
            }
            labels.push_back(c);
        }
    }

    GeneratedInstance out;
    out.points = PointSet::from_rows(std::move(data), s.n, d);
    out.labels = std::move(labels);
    out.planted_centers = PointSet::from_rows(std::move(corners), s.k, d);
    return out;
}

GeneratedInstance gen_cube(const UniformCubeSpec& s, RandomSource& rng) {
    require(s.n >= 1 && s.d >= 1, "uniform_cube: need n >= 1 and d >= 1");
    std::vector<double> data(s.n * s.d);
    for (double& v : data) v = rng.next_double();
    GeneratedInstance out;
    out.points = PointSet::from_rows(std::move(data), s.n, s.d);
    return out;
}

double parse_double_field(const std::string& value, const std::string& key) {
    double v = 0.0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [p, ec] = std::from_chars(begin, end, v);
    require(ec == std::errc() && p == end && std::isfinite(v),
            "generator spec: bad value for " + key);
    return v;
}

std::size_t parse_size_field(const std::string& value, const std::string& key) {
    std::size_t v = 0;
    const char* begin = value.data();
    const char* end = begin + value.size();
    auto [p, ec] = std::from_chars(begin, end, v);
    require(ec == std::errc() && p == end, "generator spec: bad value for " + key);
    return v;
}

} // namespace

GeneratedInstance generate_instance(const GeneratorSpec& spec, RandomSource& rng) {
    return std::visit(
        [&rng](const auto& s) -> GeneratedInstance {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, GaussianMixtureSpec>) return gen_gaussian(s, rng);
            else if constexpr (std::is_same_v<T, SimplexCornersSpec>) return gen_simplex(s, rng);
            else return gen_cube(s, rng);
        },
        spec);
}

GeneratorSpec parse_generator_spec(const std::string& text) {
    const auto colon = text.find(':');
    require(colon != std::string::npos && colon > 0,
            "generator spec: expected name:key=value,... , got '" + text + "'");
    const std::string name = text.substr(0, colon);
    std::vector<std::pair<std::string, std::string>> kv;
    {
        std::string rest = text.substr(colon + 1);
        std::size_t pos = 0;
        while (pos <= rest.size() && !rest.empty()) {
            const std::size_t comma = rest.find(',', pos);
            const std::string item =
                rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            const std::size_t eq = item.find('=');
            require(eq != std::string::npos && eq > 0 && eq + 1 < item.size(),
                    "generator spec: expected key=value, got '" + item + "'");
            kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }

    auto apply = [&kv](auto& s, auto&& setter) {
        for (const auto& [key, value] : kv) setter(s, key, value);
    };

    if (name == "gaussian_mixture") {
        GaussianMixtureSpec s;
        apply(s, [](GaussianMixtureSpec& g, const std::string& key, const std::string& value) {
            if (key == "k") g.k = parse_size_field(value, key);
            else if (key == "n") g.n = parse_size_field(value, key);
            else if (key == "d") g.d = parse_size_field(value, key);
            else if (key == "separation") g.separation = parse_double_field(value, key);
            else if (key == "scatter") g.scatter = parse_double_field(value, key);
            else throw std::invalid_argument("gaussian_mixture: unknown key '" + key + "'");
        });
        return s;
    }
    if (name == "simplex_corners") {
        SimplexCornersSpec s;
        apply(s, [](SimplexCornersSpec& g, const std::string& key, const std::string& value) {
            if (key == "k") g.k = parse_size_field(value, key);
            else if (key == "n") g.n = parse_size_field(value, key);
            else if (key == "scatter") g.scatter = parse_double_field(value, key);
            else throw std::invalid_argument("simplex_corners: unknown key '" + key + "'");
        });
        return s;
    }
    if (name == "uniform_cube") {
        UniformCubeSpec s;
        apply(s, [](UniformCubeSpec& g, const std::string& key, const std::string& value) {
            if (key == "n") g.n = parse_size_field(value, key);
            else if (key == "d") g.d = parse_size_field(value, key);
            else throw std::invalid_argument("uniform_cube: unknown key '" + key + "'");
        });
        return s;
    }
    throw std::invalid_argument("generator spec: unknown generator '" + name + "'");
}

} // namespace kmls
