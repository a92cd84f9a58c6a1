#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "kmls/center_state.hpp"
#include "kmls/generator.hpp"
#include "kmls/geometry.hpp"
#include "kmls/local_search.hpp"
#include "kmls/random.hpp"
#include "kmls/sampling.hpp"
#include "kmls/seeding.hpp"

namespace {

kmls::PointSet make_instance(std::size_t n, std::size_t k, std::size_t d) {
    kmls::RandomSource rng(1234, 0);
    kmls::GaussianMixtureSpec spec;
    spec.k = k;
    spec.n = n;
    spec.d = d;
    return kmls::generate_instance(spec, rng).points;
}

void BM_cost_scan(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const kmls::PointSet ps = make_instance(n, 16, 8);
    kmls::RandomSource rng(1, 0);
    const kmls::CenterState st = kmls::kmeanspp_seed(ps, 16, rng);
    std::vector<double> centers;
    for (std::size_t c : st.centers())
        centers.insert(centers.end(), ps.row(c).begin(), ps.row(c).end());
    const kmls::PointSet cs = kmls::PointSet::from_rows(centers, st.k(), ps.dim());
    for (auto _ : state) benchmark::DoNotOptimize(kmls::cost(ps, cs));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_cost_scan)->Arg(1000)->Arg(10000);

void BM_d2_sample(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const kmls::PointSet ps = make_instance(n, 16, 8);
    kmls::RandomSource rng(2, 0);
    const kmls::CenterState st = kmls::kmeanspp_seed(ps, 16, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(kmls::d2_sample(st, rng));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_d2_sample)->Arg(1000)->Arg(100000);

void BM_seeding(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t k = static_cast<std::size_t>(state.range(1));
    const kmls::PointSet ps = make_instance(n, k, 8);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        kmls::RandomSource rng(3, stream++);
        benchmark::DoNotOptimize(kmls::kmeanspp_seed(ps, k, rng));
    }
}
BENCHMARK(BM_seeding)->Args({1000, 10})->Args({10000, 25})->Args({10000, 100});

void BM_best_swap(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t k = static_cast<std::size_t>(state.range(1));
    const kmls::PointSet ps = make_instance(n, k, 8);
    kmls::RandomSource rng(4, 0);
    const kmls::CenterState st = kmls::kmeanspp_seed(ps, k, rng);
    std::size_t p = 0;
    for (auto _ : state) {
        p = (p + 1) % ps.size();
        benchmark::DoNotOptimize(kmls::best_swap(ps, st, p));
    }
}
BENCHMARK(BM_best_swap)->Args({1000, 10})->Args({10000, 25});

void BM_local_search_step(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::size_t k = static_cast<std::size_t>(state.range(1));
    const kmls::PointSet ps = make_instance(n, k, 8);
    for (auto _ : state) {
        state.PauseTiming();
        kmls::RandomSource rng(5, static_cast<std::uint64_t>(state.iterations()));
        kmls::CenterState st = kmls::kmeanspp_seed(ps, k, rng);
        state.ResumeTiming();
        benchmark::DoNotOptimize(kmls::local_search_step(ps, st, rng));
    }
}
BENCHMARK(BM_local_search_step)->Args({1000, 10})->Args({10000, 25});

} // namespace

BENCHMARK_MAIN();
