#include <cmath>

#include <benchmark/benchmark.h>

#include "heatfield/kernels.hpp"

using namespace heatfield;

static void BM_ApplySemigroup(benchmark::State& state) {
    const double spacing = 20.0 / static_cast<double>(state.range(0));
    const auto grid = UniformGrid::symmetric(10.0, spacing);
    const auto u = SampledFunction::tabulate(grid, [](double x) { return std::exp(-x * x); });
    for (auto _ : state) benchmark::DoNotOptimize(kernels::apply_semigroup(u, 1.0));
    state.SetComplexityN(static_cast<std::int64_t>(grid.count));
}
BENCHMARK(BM_ApplySemigroup)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared);

static void BM_CkResidual(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::ck_residual(0.3, 0.7, SpacePoint{0.0}, SpacePoint{1.0}));
}
BENCHMARK(BM_CkResidual);

static void BM_HeatKernel3d(benchmark::State& state) {
    const SpacePoint x{0.1, 0.2, 0.3}, y{-0.4, 0.5, 1.0};
    for (auto _ : state) benchmark::DoNotOptimize(kernels::heat_kernel(0.7, x, y));
}
BENCHMARK(BM_HeatKernel3d);
