#include <benchmark/benchmark.h>

#include "heatfield/montecarlo.hpp"

using namespace heatfield;

static mc::BranchingConfig binary(double alpha) {
    mc::BranchingConfig c;
    c.fertility = FertilityDistribution::binary(alpha);
    return c;
}

static void BM_Extinction(benchmark::State& state) {
    auto c = binary(0.25);
    c.max_particles = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(mc::estimate_extinction(c, 60.0, 1000, mc::RngSeed{42}, {1}));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_Extinction)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_SimulateWithPositions(benchmark::State& state) {
    auto c = binary(0.45);
    c.x0 = SpacePoint{0.0, 0.0, 0.0};
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(mc::simulate_branching(c, 5.0, {}, mc::RngSeed{seed++}));
}
BENCHMARK(BM_SimulateWithPositions);

static void BM_FeynmanKac(benchmark::State& state) {
    const auto u = SampledFunction::tabulate(UniformGrid::symmetric(10.0, 0.01),
                                             [](double x) { return 1.0 / (1.0 + x * x); });
    for (auto _ : state)
        benchmark::DoNotOptimize(mc::feynman_kac_estimate(u, [](double x) { return x * x; }, 1.0,
                                                          SpacePoint{0.0}, 1000, 20, mc::RngSeed{1}, {1}));
    state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_FeynmanKac)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
