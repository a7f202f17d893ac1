#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "heatfield/statistics.hpp"

using namespace heatfield::stats;

TEST(PairwiseSum, ExactOnIntegersAndStableOnManyTerms) {
    std::vector<double> xs(1000);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i);
    EXPECT_EQ(pairwise_sum(xs), 499500.0);
    std::vector<double> tenths(1'000'000, 0.1);
    EXPECT_NEAR(pairwise_sum(tenths), 1e5, 1e-9);
}

TEST(MeanEstimate, KnownSample) {
    const std::vector<double> xs{1, 2, 3, 4};
    const auto e = mean_estimate(xs);
    EXPECT_DOUBLE_EQ(e.value, 2.5);
    EXPECT_DOUBLE_EQ(e.std_error, std::sqrt((5.0 / 3.0) / 4.0));
}

TEST(BinomialEstimate, Formula) {
    const auto e = binomial_estimate(25, 100);
    EXPECT_DOUBLE_EQ(e.value, 0.25);
    EXPECT_DOUBLE_EQ(e.std_error, std::sqrt(0.25 * 0.75 / 100));
}

TEST(KolmogorovSmirnov, PvalueMatchesTabulatedQuantiles) {
    const std::size_t n = 100000;
    EXPECT_NEAR(ks_pvalue(1.3581 / std::sqrt(static_cast<double>(n)), n), 0.05, 1e-3);
    EXPECT_NEAR(ks_pvalue(1.6276 / std::sqrt(static_cast<double>(n)), n), 0.01, 5e-4);
    EXPECT_EQ(ks_pvalue(0.0, n), 1.0);
}

TEST(KolmogorovSmirnov, AcceptsCorrectLawRejectsWrongOne) {
    std::mt19937_64 g(1);
    std::exponential_distribution<double> e(2.0);
    std::vector<double> xs(5000);
    for (auto& x : xs) x = e(g);
    const auto right = [](double x) { return 1 - std::exp(-2 * x); };
    const auto wrong = [](double x) { return 1 - std::exp(-2.3 * x); };
    EXPECT_GT(ks_pvalue(ks_statistic(xs, right), xs.size()), 0.01);
    EXPECT_LT(ks_pvalue(ks_statistic(xs, wrong), xs.size()), 0.01);
}

TEST(ChiSquare, StatisticAndPvalue) {
    const std::vector<std::size_t> obs{30, 20, 50};
    const std::vector<double> p{0.25, 0.25, 0.5};
    EXPECT_DOUBLE_EQ(chi_square_statistic(obs, p), 1.0 + 1.0 + 0.0);
    // dof = 2: survival function is exp(-x/2).
    EXPECT_NEAR(chi_square_pvalue(2.0, 2), std::exp(-1.0), 1e-14);
}
