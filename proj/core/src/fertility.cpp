#include "heatfield/fertility.hpp"

#include <cmath>

#include "heatfield/errors.hpp"

namespace heatfield {

FertilityDistribution::FertilityDistribution(std::vector<double> p) : p_(std::move(p)) {
    using detail::require;
    require(!p_.empty(), ErrorCode::InvalidFertility, "fertility law is empty");
    double total = 0.0;
    for (double pk : p_) {
        require(std::isfinite(pk) && pk >= 0.0, ErrorCode::InvalidFertility,
                "fertility probabilities must be finite and non-negative");
        total += pk;
    }
    require(std::abs(total - 1.0) <= 1e-12, ErrorCode::InvalidFertility,
            "fertility probabilities must sum to 1");
}

FertilityDistribution FertilityDistribution::binary(double alpha) {
    detail::require(alpha >= 0.0 && alpha <= 1.0, ErrorCode::InvalidFertility,
                    "alpha must lie in [0,1]");
    return FertilityDistribution({alpha, 0.0, 1.0 - alpha});
}

double FertilityDistribution::mean() const noexcept {
    double m = 0.0;
    for (std::size_t k = 1; k < p_.size(); ++k) m += static_cast<double>(k) * p_[k];
    return m;
}

double w_eval(const FertilityDistribution& fertility, double phi) {
    const auto p = fertility.probabilities();
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * phi + *it;
    return acc;
}

}  // namespace heatfield
