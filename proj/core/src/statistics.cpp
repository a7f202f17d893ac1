#include "heatfield/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "heatfield/errors.hpp"

namespace heatfield::stats {

double pairwise_sum(std::span<const double> xs) noexcept {
    constexpr std::size_t kBlock = 16;
    if (xs.size() <= kBlock) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

Estimate mean_estimate(std::span<const double> xs) {
    detail::require(!xs.empty(), ErrorCode::InvalidArgument, "mean of an empty sample");
    const double n = static_cast<double>(xs.size());
    const double mean = pairwise_sum(xs) / n;
    if (xs.size() == 1) return {mean, 0.0};
    std::vector<double> dev(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) dev[i] = (xs[i] - mean) * (xs[i] - mean);
    const double var = pairwise_sum(dev) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

Estimate binomial_estimate(std::size_t successes, std::size_t trials) {
    detail::require(trials > 0 && successes <= trials, ErrorCode::InvalidArgument,
                    "binomial estimate needs 0 <= successes <= trials, trials > 0");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    return {p, std::sqrt(p * (1.0 - p) / n)};
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    detail::require(!samples.empty(), ErrorCode::InvalidArgument, "KS test on an empty sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_pvalue(double statistic, std::size_t n) {
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * statistic;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_square_statistic(std::span<const std::size_t> observed, std::span<const double> probs) {
    detail::require(observed.size() == probs.size(), ErrorCode::InvalidArgument,
                    "observed and expected bins differ in number");
    std::size_t total = 0;
    for (auto o : observed) total += o;
    double chi2 = 0.0;
    for (std::size_t k = 0; k < observed.size(); ++k) {
        if (probs[k] == 0.0) {
            detail::require(observed[k] == 0, ErrorCode::InvalidArgument,
                            "observation in a bin of zero probability");
            continue;
        }
        const double expected = probs[k] * static_cast<double>(total);
        const double diff = static_cast<double>(observed[k]) - expected;
        chi2 += diff * diff / expected;
    }
    return chi2;
}

double chi_square_pvalue(double statistic, std::size_t dof) {
    detail::require(dof > 0, ErrorCode::InvalidArgument, "chi-square needs dof > 0");
    return boost::math::gamma_q(0.5 * static_cast<double>(dof), 0.5 * statistic);
}

}  // namespace heatfield::stats
