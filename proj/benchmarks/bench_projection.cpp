#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bsca/bsca_policy.hpp"
#include "bsca/projection.hpp"
#include "bsca/routing.hpp"
#include "bsca/topology.hpp"

namespace {

// ascent-shaped input: feasible point plus one bumped entry
static void BM_ProjectCache(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int capacity = n * 3 / 10;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<double> base(n, static_cast<double>(capacity) / n);
    for (auto _ : state) {
        state.PauseTiming();
        std::vector<double> q = base;
        q[pick(rng)] += 0.9;
        state.ResumeTiming();
        bsca::project_cache_inplace(q, capacity);
        benchmark::DoNotOptimize(q.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_ProjectCache)->RangeMultiplier(2)->Range(1024, 1 << 17)->Complexity(benchmark::oN);

static void BM_ProjectCacheSpike(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int capacity = n * 3 / 10;
    std::vector<double> base(n, static_cast<double>(capacity) / n);
    base[0] = 0.98;  // the update pushes it over the box bound
    for (auto _ : state) {
        state.PauseTiming();
        std::vector<double> q = base;
        q[0] += 0.4;
        state.ResumeTiming();
        bsca::project_cache_inplace(q, capacity);
        benchmark::DoNotOptimize(q.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_ProjectCacheSpike)->RangeMultiplier(4)->Range(1024, 1 << 16)
    ->Complexity(benchmark::oN);

static void BM_RouteRequest(benchmark::State& state) {
    const int caches = static_cast<int>(state.range(0));
    const bsca::Topology top =
        bsca::Topology::full(1, caches, 64, std::vector<int>(caches, 16));
    auto model = bsca::UtilityModel::uniform_per_cache(
        64, 1, [caches] {
            std::vector<double> w(caches);
            for (int j = 0; j < caches; ++j) w[j] = 1.0 + j;
            return w;
        }());
    bsca::Matrix y = bsca::feasible_initial_cache(top);
    const bsca::Request req{1, 7, 0};
    for (auto _ : state) {
        auto out = bsca::route(req, y, top, model.at(1));
        benchmark::DoNotOptimize(out.utility);
    }
}
BENCHMARK(BM_RouteRequest)->DenseRange(1, 6);

static void BM_PolicyStep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const bsca::Topology top = bsca::Topology::full(1, 1, n, {n * 3 / 10});
    const auto model = bsca::UtilityModel::per_file(std::vector<double>(n, 1.0));
    bsca::BscaOptions options;
    options.horizon = 100000;
    bsca::BscaPolicy policy(top, options, model);
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> pick(0, n - 1);
    bsca::slot_t t = 1;
    for (auto _ : state) {
        auto result = policy.step({t++, pick(rng), 0}, model);
        benchmark::DoNotOptimize(result.utility);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_PolicyStep)->RangeMultiplier(4)->Range(256, 1 << 14)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
