#pragma once

// Dyson-Schwinger equations of binary branching Brownian motion
// (p_0 = alpha, p_2 = beta = 1 - alpha, clock rate gamma):
//
//   one-point   A(tau) = alpha (1 - e^{-gamma tau})
//                        + gamma beta int_0^tau e^{-gamma w} A(tau - w)^2 dw
//   two-point   D(z) = B(z) + gamma beta int dw0 int dw B(w) A(z0 - w0) D(z - w)
//
// Everything here works with heat (Gamma_+) projections, i.e. real values.

#include <cstddef>
#include <span>
#include <vector>

#include "heatfield/fertility.hpp"
#include "heatfield/grid.hpp"

namespace heatfield::dyson {

/// Exact solution of A' = gamma (alpha - A + beta A^2), A(0) = 0, written as
/// (1 - s coth(s gamma tau / 2 + artanh s)) / (2 beta) with s = |1 - 2 alpha|.
/// alpha = 1/2, alpha = 0 and beta = 0 take their limit branches; the latter
/// returns 1 - exp(-gamma tau).
double one_point_closed_form(double alpha, double gamma, double tau);

/// Classic RK4 for phi' = gamma (W(phi) - phi), phi(0) = theta0, reported on
/// `grid` (which must start at 0) using `substeps` RK4 steps per grid step.
/// Throws StabilityViolation if the solution leaves [-1e-9, 1 + 1e-9].
SampledCurve one_point_ode(const FertilityDistribution& fertility, double gamma, double theta0,
                           const TimeGrid& grid, int substeps = 1);

/// Picard iterates A^(1) .. A^(order) of the one-point recurrence starting
/// from A^(0) = 0. The convolution is a composite trapezoid on `grid`.
std::vector<SampledCurve> one_point_picard_sequence(double alpha, double gamma,
                                                    const TimeGrid& grid, int order);

/// The order-th Picard iterate (order >= 1).
SampledCurve one_point_picard(double alpha, double gamma, const TimeGrid& grid, int order);

/// lim A(tau): alpha / (1 - alpha) for alpha < 1/2, else 1.
double extinction_probability(double alpha);

/// Spatially integrated two-point function
///   M(t) = e^{-gamma t} + gamma beta int_0^t e^{-gamma w} A(t - w) M(t - w) dw,
/// solved by Picard iteration until successive iterates differ by < 1e-10.
/// Throws NoConvergence after 10^4 iterations.
SampledCurve mass_curve(double alpha, double gamma, const TimeGrid& grid);

/// Sup-norm residual of the discretised mass equation for a given curve.
double mass_curve_residual(const SampledCurve& mass, double alpha, double gamma);

struct TwoPointSpec {
    double t_max = 2.0;
    double time_step = 0.02;
    double space_step = 0.05;
    double half_width = 9.0;
};

/// Heat projection of the dressed two-point function on a uniform
/// (time x space) grid, d = 1, source at the origin. Row 0 (t = 0) is zero
/// because the retarded propagator vanishes at equal times.
class SpaceTimeField {
public:
    SpaceTimeField(TimeGrid time, UniformGrid space);

    const TimeGrid& time() const noexcept { return time_; }
    const UniformGrid& space() const noexcept { return space_; }
    std::size_t time_count() const noexcept { return time_.count; }
    std::size_t space_count() const noexcept { return space_.count; }

    std::span<double> slice(std::size_t i) noexcept {
        return {values_.data() + i * space_.count, space_.count};
    }
    std::span<const double> slice(std::size_t i) const noexcept {
        return {values_.data() + i * space_.count, space_.count};
    }
    double at(std::size_t i, std::size_t j) const noexcept { return values_[i * space_.count + j]; }

    /// Trapezoid integral of slice i over space.
    double slice_mass(std::size_t i) const noexcept;

    /// Largest number of Picard sweeps any slice needed.
    std::size_t iterations = 0;

private:
    TimeGrid time_;
    UniformGrid space_;
    std::vector<double> values_;
};

/// Solves the two-point equation. Causality makes slice i depend only on
/// slices 1..i, so slices are resolved in time order, each by Picard
/// iteration on its own implicit term until the update is below `tol`.
/// Throws GridTooNarrow if half_width < 6 sqrt(t_max), NoConvergence if a
/// slice exceeds `max_iter` sweeps.
SpaceTimeField two_point_picard(double alpha, double gamma, const TwoPointSpec& spec,
                                double tol = 1e-12, std::size_t max_iter = 10000);

/// Sup-norm of D - T(D) where T is the full discretised two-point operator.
double two_point_residual(const SpaceTimeField& field, double alpha, double gamma);

}  // namespace heatfield::dyson
