#pragma once

// Heat-kernel machinery for standard Brownian motion (generator Laplacian/2).

#include "heatfield/grid.hpp"
#include "heatfield/pring.hpp"

namespace heatfield::kernels {

/// Gaussian transition density (2 pi t)^(-d/2) exp(-|x - y|^2 / (2t)).
/// Throws NonPositiveTime for t <= 0 and DimensionMismatch.
double heat_kernel(double t, const SpacePoint& x, const SpacePoint& y);

/// 1-d kernel as a function of the displacement only.
double heat_kernel_1d(double t, double dx);

/// Distance from the grid edge beyond which the Gaussian tail of p_t
/// carries less than 1e-8 of its mass.
double semigroup_margin(double t);

/// (P_t u)(x_i) = sum_j w_j u(x_j) p_t(x_i, x_j) h, composite trapezoid on
/// u's own grid, u taken as zero off the grid. Nodes closer than
/// semigroup_margin(t) to an edge only see part of the kernel, so results
/// are faithful in the interior or wherever u vanishes near the edges.
/// Throws GridTooNarrow when the grid half-width is below semigroup_margin(t).
SampledFunction apply_semigroup(const SampledFunction& u, double t);

/// |int p_t(x,z) p_s(z,y) dz - p_{t+s}(x,y)| by adaptive Simpson (abs tol 1e-9).
double ck_residual(double t, double s, const SpacePoint& x, const SpacePoint& y);

/// Heat projection of the retarded propagator:
/// exp(-gamma dt) p_dt(x, y) for dt = y.time - x.time > 0, and 0 for dt <= 0.
double retarded_propagator_heat(const SpaceTimePoint& x, const SpaceTimePoint& y, double gamma);

/// Probability that an exponential clock of rate gamma rings within dtau.
double event_probability(double gamma, double dtau);

/// U(t) = exp(-I E t).
pring::PseudoComplex time_evolution(double energy, double t);

}  // namespace heatfield::kernels
