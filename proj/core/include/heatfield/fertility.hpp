#pragma once

#include <span>
#include <vector>

namespace heatfield {

/// Offspring law (p_0, ..., p_K) of a dying particle.
class FertilityDistribution {
public:
    /// Throws InvalidFertility unless all p_k >= 0 and |sum p_k - 1| <= 1e-12.
    explicit FertilityDistribution(std::vector<double> p);

    /// Binary model: p_0 = alpha, p_2 = 1 - alpha.
    static FertilityDistribution binary(double alpha);

    std::span<const double> probabilities() const noexcept { return p_; }
    std::size_t max_offspring() const noexcept { return p_.size() - 1; }
    double mean() const noexcept;

private:
    std::vector<double> p_;
};

/// Probability generating function W(phi) = sum_k p_k phi^k (Horner).
double w_eval(const FertilityDistribution& fertility, double phi);

}  // namespace heatfield
