#include <benchmark/benchmark.h>

#include "heatfield/dyson.hpp"

using namespace heatfield;

static void BM_ClosedForm(benchmark::State& state) {
    double tau = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dyson::one_point_closed_form(0.25, 1.0, tau));
        tau += 1e-3;
    }
}
BENCHMARK(BM_ClosedForm);

static void BM_OnePointOde(benchmark::State& state) {
    const auto grid = TimeGrid::covering(10.0, 1e-3);
    const auto w = FertilityDistribution::binary(0.25);
    for (auto _ : state) benchmark::DoNotOptimize(dyson::one_point_ode(w, 1.0, 0.0, grid));
}
BENCHMARK(BM_OnePointOde)->Unit(benchmark::kMillisecond);

static void BM_OnePointPicard(benchmark::State& state) {
    const auto grid = TimeGrid::covering(5.0, 1e-3);
    for (auto _ : state)
        benchmark::DoNotOptimize(dyson::one_point_picard(0.25, 1.0, grid, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_OnePointPicard)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_MassCurve(benchmark::State& state) {
    const auto grid = TimeGrid::covering(2.0, 1e-3);
    for (auto _ : state) benchmark::DoNotOptimize(dyson::mass_curve(0.25, 1.0, grid));
}
BENCHMARK(BM_MassCurve)->Unit(benchmark::kMillisecond);

static void BM_TwoPoint(benchmark::State& state) {
    const dyson::TwoPointSpec spec{};
    for (auto _ : state) benchmark::DoNotOptimize(dyson::two_point_picard(0.25, 1.0, spec));
}
BENCHMARK(BM_TwoPoint)->Unit(benchmark::kMillisecond);
