#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "heatfield/dyson.hpp"
#include "heatfield/errors.hpp"
#include "heatfield/kernels.hpp"
#include "heatfield/montecarlo.hpp"
#include "heatfield/statistics.hpp"
#include "oracles.hpp"

using namespace heatfield;
using namespace heatfield::mc;
using heatfield::testing::Frozen;

namespace {

BranchingConfig binary(double alpha, double gamma = 1.0, std::size_t cap = 1'000'000) {
    BranchingConfig c;
    c.gamma = gamma;
    c.fertility = FertilityDistribution::binary(alpha);
    c.x0 = SpacePoint{0.0};
    c.max_particles = cap;
    return c;
}

SampledFunction bump() {
    const auto grid = UniformGrid::symmetric(10.0, 0.01);
    return SampledFunction::tabulate(grid, [](double x) { return std::exp(-x * x) * (1 + 0.5 * x); });
}

}  // namespace

TEST(RngSeed, DerivationIsDocumentedSplitMix) {
    // Reference SplitMix64 generator seeded with 0: first output.
    EXPECT_EQ(derive_seed(0, 0), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(derive_seed(42, 3), splitmix64_mix(42 + 4 * 0x9e3779b97f4a7c15ULL));
}

TEST(BrownianPath, DeterministicForFixedSeed) {
    const auto a = sample_brownian_path(SpacePoint{0.0, 1.0}, 2.0, 50, RngSeed{9});
    const auto b = sample_brownian_path(SpacePoint{0.0, 1.0}, 2.0, 50, RngSeed{9});
    ASSERT_EQ(a.size(), 51u);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, sample_brownian_path(SpacePoint{0.0, 1.0}, 2.0, 50, RngSeed{10}));
}

TEST(BrownianPath, EndpointLawIsStandardNormal) {
    const std::size_t n = 100000;
    std::vector<double> ends(n);
    for (std::size_t i = 0; i < n; ++i)
        ends[i] = sample_brownian_path(SpacePoint{0.0}, 1.0, 4, RngSeed{i}).back()[0];
    const auto m = stats::mean_estimate(ends);
    EXPECT_LT(std::abs(m.value), 3.0 / std::sqrt(static_cast<double>(n)));
    double ss = 0.0;
    for (double e : ends) ss += (e - m.value) * (e - m.value);
    const double var = ss / static_cast<double>(n - 1);
    EXPECT_LT(std::abs(var - 1.0), 3.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST(BrownianPath, IncrementsHaveStepVariance) {
    const std::size_t steps = 20;
    const double t = 3.0;
    std::vector<double> inc;
    for (std::uint64_t s = 0; s < 2000; ++s) {
        const auto p = sample_brownian_path(SpacePoint{0.0}, t, steps, RngSeed{s});
        for (std::size_t k = 1; k < p.size(); ++k) inc.push_back(p[k][0] - p[k - 1][0]);
    }
    const double n = static_cast<double>(inc.size());
    double ss = 0.0;
    for (double x : inc) ss += x * x;
    const double dt = t / steps;
    EXPECT_LT(std::abs(ss / n - dt), 3.0 * dt * std::sqrt(2.0 / n));
}

TEST(FeynmanKac, ZeroPotentialIsHeatSemigroup) {
    const auto u = bump();
    const double t = 0.8, x = 0.3;
    const auto est = feynman_kac_estimate(u, [](double) { return 0.0; }, t, SpacePoint{x}, 20000,
                                          10, RngSeed{1});
    const double exact = kernels::apply_semigroup(u, t).interpolate(x);
    EXPECT_LT(std::abs(est.value - exact), 3.0 * est.std_error);
}

TEST(FeynmanKac, ConstantPotentialKillsAtRateGamma) {
    const auto u = bump();
    const double t = 1.0, x = -0.4, gamma = 0.7;
    const auto est = feynman_kac_estimate(u, [&](double) { return gamma; }, t, SpacePoint{x}, 20000,
                                          10, RngSeed{2});
    const double exact = std::exp(-gamma * t) * kernels::apply_semigroup(u, t).interpolate(x);
    EXPECT_LT(std::abs(est.value - exact), 3.0 * est.std_error);
}

TEST(FeynmanKac, DeterministicIntegrand) {
    const auto one = SampledFunction::tabulate(UniformGrid::symmetric(5, 0.1), [](double) { return 1.0; });
    const auto est = feynman_kac_estimate(one, [](double) { return 1.0; }, 1.0, SpacePoint{0.0},
                                          1000, 8, RngSeed{3});
    EXPECT_NEAR(est.value, std::exp(-1.0), 1e-14);
    EXPECT_NEAR(est.std_error, 0.0, 1e-14);
}

TEST(SimulateBranching, NoTimeNoEvents) {
    const double times[] = {0.0};
    const auto log = simulate_branching(binary(0.3), 0.0, times, RngSeed{5});
    EXPECT_TRUE(log.events.empty());
    EXPECT_EQ(log.final_population.size(), 1u);
    EXPECT_EQ(log.counts, std::vector<std::size_t>{1});
    EXPECT_EQ(log.final_population.positions[0], SpacePoint{0.0});
}

TEST(SimulateBranching, PureDeathHasAtMostOneParticle) {
    BranchingConfig c = binary(1.0, 2.0);
    const double times[] = {0.1, 0.5, 1.0};
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto log = simulate_branching(c, 1.0, times, RngSeed{s});
        ASSERT_LE(log.events.size(), 1u);
        for (auto n : log.counts) EXPECT_LE(n, 1u);
        EXPECT_TRUE(std::is_sorted(log.counts.rbegin(), log.counts.rend()));
    }
}

TEST(SimulateBranching, PureBranchingNeverShrinks) {
    BranchingConfig c;
    c.fertility = FertilityDistribution({0.0, 0.0, 1.0});
    c.x0 = SpacePoint{0.0, 0.0, 0.0};
    std::vector<double> times;
    for (int k = 0; k <= 20; ++k) times.push_back(0.1 * k);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto log = simulate_branching(c, 2.0, times, RngSeed{s});
        EXPECT_TRUE(std::is_sorted(log.counts.begin(), log.counts.end()));
        EXPECT_GE(log.counts.front(), 1u);
        for (const auto& e : log.events) {
            EXPECT_EQ(e.kind, EventKind::Branch);
            EXPECT_EQ(e.children.size(), 2u);
            EXPECT_EQ(e.position.dim(), 3u);
        }
        EXPECT_EQ(log.final_population.size(), log.counts.back());
    }
}

TEST(SimulateBranching, LogInvariants) {
    const auto c = binary(0.45, 1.0);
    const double times[] = {1.0, 5.0, 10.0};
    for (std::uint64_t s = 0; s < 200; ++s) {
        const auto log = simulate_branching(c, 10.0, times, RngSeed{s});
        std::size_t live = 1;
        double last = 0.0;
        for (std::size_t k = 0; k < log.events.size(); ++k) {
            const auto& e = log.events[k];
            EXPECT_GE(e.time, last);
            last = e.time;
            EXPECT_EQ(e.kind == EventKind::Death, e.children.empty());
            live = live - 1 + e.children.size();
            if (live == 0) EXPECT_EQ(k + 1, log.events.size()) << "event after extinction";
        }
        EXPECT_EQ(live, log.final_population.size());
        EXPECT_EQ(log.counts.back(), live);
    }
}

TEST(SimulateBranching, DeterministicForFixedSeed) {
    const auto c = binary(0.3, 1.0);
    const double times[] = {2.0};
    const auto a = simulate_branching(c, 4.0, times, RngSeed{77});
    const auto b = simulate_branching(c, 4.0, times, RngSeed{77});
    ASSERT_EQ(a.events.size(), b.events.size());
    for (std::size_t k = 0; k < a.events.size(); ++k) {
        EXPECT_EQ(a.events[k].time, b.events[k].time);
        EXPECT_EQ(a.events[k].position, b.events[k].position);
        EXPECT_EQ(a.events[k].children, b.events[k].children);
    }
    EXPECT_EQ(a.final_population.positions, b.final_population.positions);
}

TEST(SimulateBranching, ExplosionIsReported) {
    BranchingConfig c;
    c.fertility = FertilityDistribution({0.0, 0.0, 1.0});
    c.max_particles = 64;
    try {
        simulate_branching(c, 100.0, {}, RngSeed{1});
        FAIL() << "expected PopulationExplosion";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PopulationExplosion);
    }
    EXPECT_THROW(estimate_generating_function(c, 0.5, 100.0, 4, RngSeed{1}), Error);
}

TEST(SimulateBranching, RejectsBadArguments) {
    const double unsorted[] = {2.0, 1.0};
    const double beyond[] = {5.0};
    EXPECT_THROW(simulate_branching(binary(0.3), 3.0, unsorted, RngSeed{1}), Error);
    EXPECT_THROW(simulate_branching(binary(0.3), 3.0, beyond, RngSeed{1}), Error);
    EXPECT_THROW(simulate_branching(binary(0.3), -1.0, {}, RngSeed{1}), Error);
    auto bad = binary(0.3);
    bad.gamma = 0.0;
    EXPECT_THROW(simulate_branching(bad, 1.0, {}, RngSeed{1}), Error);
}

TEST(Extinction, PureDeathMatchesClock) {
    const auto c = binary(1.0, 1.0);
    const double horizon = 0.8;
    const auto e = estimate_extinction(c, horizon, 10000, RngSeed{3});
    EXPECT_LT(std::abs(e.p_hat - kernels::event_probability(1.0, horizon)), 3.0 * e.std_error);
    EXPECT_EQ(e.capped, 0u);
}

TEST(Extinction, CriticalCaseAtFiniteHorizon) {
    const auto c = binary(0.5, 1.0);
    const auto e = estimate_extinction(c, 60.0, 4000, RngSeed{4});
    EXPECT_GT(e.p_hat, 0.9);
    EXPECT_LT(std::abs(e.p_hat - dyson::one_point_closed_form(0.5, 1.0, 60.0)), 3.0 * e.std_error);
}

TEST(Extinction, CurveTracksOnePointFunction) {
    const auto c = binary(0.25, 1.0, 2000);
    const std::vector<double> times{0.5, 1.0, 2.0, 4.0, 8.0};
    const auto curve = estimate_extinction_curve(c, times, 8000, RngSeed{8});
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double exact = dyson::one_point_closed_form(0.25, 1.0, times[k]);
        EXPECT_LT(std::abs(curve[k].p_hat - exact), 3.5 * curve[k].std_error) << times[k];
    }
}

TEST(GeneratingFunction, ThetaOneIsExactlyOne) {
    const auto e = estimate_generating_function(binary(0.3), 1.0, 2.0, 500, RngSeed{1});
    EXPECT_EQ(e.value, 1.0);
    EXPECT_EQ(e.std_error, 0.0);
}

TEST(GeneratingFunction, ThetaZeroIsFiniteHorizonExtinction) {
    const auto c = binary(0.35);
    const auto gf = estimate_generating_function(c, 0.0, 1.5, 3000, RngSeed{12});
    const auto ext = estimate_extinction(c, 1.5, 3000, RngSeed{12});
    EXPECT_EQ(gf.value, ext.p_hat);
}

TEST(GeneratingFunction, MatchesDualOde) {
    const auto e = estimate_generating_function(binary(0.25), 0.5, 1.0, 100000, RngSeed{2024});
    EXPECT_LT(std::abs(e.value - Frozen::kGeneratingAlpha025Theta05T1), 3.0 * e.std_error);
}

TEST(McKean, ConstantPhiIsGeneratingFunction) {
    const auto c = binary(0.25);
    const auto theta =
        SampledFunction::tabulate(UniformGrid::symmetric(4.0, 0.5), [](double) { return 0.6; });
    const auto mk = estimate_mckean_product(c, theta, 1.2, 2000, RngSeed{31});
    const auto gf = estimate_generating_function(c, 0.6, 1.2, 2000, RngSeed{31});
    EXPECT_DOUBLE_EQ(mk.value, gf.value);
}

TEST(McKean, ZeroTimeAndUnitPhi) {
    auto c = binary(0.25);
    c.x0 = SpacePoint{0.37};
    const auto phi = SampledFunction::tabulate(UniformGrid::symmetric(3.0, 0.01),
                                               [](double x) { return 1.0 / (1.0 + x * x); });
    const auto at0 = estimate_mckean_product(c, phi, 0.0, 100, RngSeed{1});
    EXPECT_EQ(at0.value, phi.interpolate(0.37));
    const auto one = SampledFunction::tabulate(UniformGrid::symmetric(3.0, 0.1), [](double) { return 1.0; });
    EXPECT_EQ(estimate_mckean_product(c, one, 2.0, 300, RngSeed{2}).value, 1.0);
}

TEST(McKean, RejectsPhiOutsideUnitInterval) {
    const auto phi = SampledFunction::tabulate(UniformGrid::symmetric(3.0, 0.1), [](double) { return 1.5; });
    EXPECT_THROW(estimate_mckean_product(binary(0.3), phi, 1.0, 10, RngSeed{1}), Error);
}

TEST(Clock, FirstEventTimesAreExponential) {
    BranchingConfig c = binary(0.5, 2.0);
    const auto times = sample_first_event_times(c, 10000, RngSeed{6});
    const auto m = stats::mean_estimate(times);
    EXPECT_LT(std::abs(m.value - 0.5), 3.0 * 0.5 / 100.0);
    const double d = stats::ks_statistic(times, [](double t) { return 1.0 - std::exp(-2.0 * t); });
    EXPECT_GT(stats::ks_pvalue(d, times.size()), 0.01);
}

TEST(Clock, OffspringFollowFertility) {
    BranchingConfig c;
    c.fertility = FertilityDistribution({0.4, 0.3, 0.2, 0.1});
    const auto counts = sample_offspring_counts(c, 5.0, 3000, RngSeed{7});
    ASSERT_GE(counts.size(), 10000u);
    std::vector<std::size_t> hist(4, 0);
    for (auto k : counts) ++hist.at(k);
    const auto p = c.fertility.probabilities();
    const double chi2 = stats::chi_square_statistic(hist, p);
    EXPECT_GT(stats::chi_square_pvalue(chi2, hist.size() - 1), 0.01);
}

TEST(Parallelism, BitIdenticalAcrossWorkerCounts) {
    const auto c = binary(0.3);
    const auto u = bump();
    for (unsigned w : {2u, 3u, 8u}) {
        EXPECT_EQ(estimate_generating_function(c, 0.4, 2.0, 999, RngSeed{5}, {1}).value,
                  estimate_generating_function(c, 0.4, 2.0, 999, RngSeed{5}, {w}).value);
        EXPECT_EQ(estimate_extinction(c, 3.0, 999, RngSeed{5}, {1}).p_hat,
                  estimate_extinction(c, 3.0, 999, RngSeed{5}, {w}).p_hat);
        const auto fk1 = feynman_kac_estimate(u, [](double x) { return x * x; }, 1.0, SpacePoint{0.0},
                                              777, 5, RngSeed{5}, {1});
        const auto fkw = feynman_kac_estimate(u, [](double x) { return x * x; }, 1.0, SpacePoint{0.0},
                                              777, 5, RngSeed{5}, {w});
        EXPECT_EQ(fk1.value, fkw.value);
        EXPECT_EQ(fk1.std_error, fkw.std_error);
    }
}
