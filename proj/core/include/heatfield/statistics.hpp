#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace heatfield::stats {

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Pairwise (cascade) summation; result depends only on element order.
double pairwise_sum(std::span<const double> xs) noexcept;

/// Sample mean and its standard error sqrt(s^2 / n), s^2 the unbiased variance.
Estimate mean_estimate(std::span<const double> xs);

/// Proportion with binomial standard error sqrt(p (1 - p) / n).
Estimate binomial_estimate(std::size_t successes, std::size_t trials);

/// Two-sided Kolmogorov-Smirnov statistic sup |F_n - F| against `cdf`.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Asymptotic p-value of the KS statistic for sample size n
/// (Kolmogorov series with Stephens' small-sample correction).
double ks_pvalue(double statistic, std::size_t n);

/// Pearson chi-square statistic of observed counts against expected probabilities.
double chi_square_statistic(std::span<const std::size_t> observed, std::span<const double> probs);

/// Upper-tail probability of a chi-square variate with `dof` degrees of freedom.
double chi_square_pvalue(double statistic, std::size_t dof);

}  // namespace heatfield::stats
