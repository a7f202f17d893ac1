#include "heatfield/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "heatfield/errors.hpp"
#include "heatfield/quadrature.hpp"

namespace heatfield::kernels {

using detail::require;

namespace {

double gaussian_density(double t, double r2, std::size_t dim) {
    const double norm = std::pow(2.0 * std::numbers::pi * t, -0.5 * static_cast<double>(dim));
    return norm * std::exp(-r2 / (2.0 * t));
}

void require_positive_time(double t) {
    require(std::isfinite(t), ErrorCode::NonFinite, "time is not finite");
    require(t > 0.0, ErrorCode::NonPositiveTime, "heat kernel needs t > 0");
}

}  // namespace

double heat_kernel(double t, const SpacePoint& x, const SpacePoint& y) {
    require_positive_time(t);
    return gaussian_density(t, squared_distance(x, y), x.dim());
}

double heat_kernel_1d(double t, double dx) {
    require_positive_time(t);
    return gaussian_density(t, dx * dx, 1);
}

double semigroup_margin(double t) { return 6.0 * std::sqrt(t); }

SampledFunction apply_semigroup(const SampledFunction& u, double t) {
    require_positive_time(t);
    const UniformGrid& g = u.grid();
    if (g.half_width() < semigroup_margin(t))
        detail::fail(ErrorCode::GridTooNarrow,
                     "grid half-width is below 6*sqrt(t); Gaussian mass would leak off the grid");

    const std::size_t n = g.count;
    std::vector<double> kernel(n);
    for (std::size_t m = 0; m < n; ++m)
        kernel[m] = gaussian_density(t, std::pow(static_cast<double>(m) * g.spacing, 2), 1);

    std::vector<double> weighted(u.values().begin(), u.values().end());
    weighted.front() *= 0.5;
    weighted.back() *= 0.5;

    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += weighted[j] * kernel[i > j ? i - j : j - i];
        out[i] = acc * g.spacing;
    }
    return SampledFunction(g, std::move(out));
}

double ck_residual(double t, double s, const SpacePoint& x, const SpacePoint& y) {
    require_positive_time(t);
    require_positive_time(s);
    require(x.dim() == y.dim(), ErrorCode::DimensionMismatch, "points differ in dimension");
    require(x.dim() == 1, ErrorCode::InvalidArgument, "ck_residual is one-dimensional");

    const double x0 = x[0];
    const double y0 = y[0];
    const double reach = 12.0 * std::sqrt(std::max(t, s));
    const double lo = std::min(x0, y0) - reach;
    const double hi = std::max(x0, y0) + reach;
    const auto integrand = [&](double z) {
        return heat_kernel_1d(t, x0 - z) * heat_kernel_1d(s, z - y0);
    };
    const double composed = quad::adaptive_simpson(integrand, lo, hi, 1e-9).value;
    return std::abs(composed - heat_kernel_1d(t + s, x0 - y0));
}

double retarded_propagator_heat(const SpaceTimePoint& x, const SpaceTimePoint& y, double gamma) {
    require(std::isfinite(x.time) && std::isfinite(y.time) && std::isfinite(gamma),
            ErrorCode::NonFinite, "non-finite propagator argument");
    require(gamma >= 0.0, ErrorCode::InvalidArgument, "clock rate must be non-negative");
    const double dt = y.time - x.time;
    if (dt <= 0.0) return 0.0;
    return std::exp(-gamma * dt) * heat_kernel(dt, x.space, y.space);
}

double event_probability(double gamma, double dtau) {
    require(std::isfinite(gamma) && std::isfinite(dtau), ErrorCode::NonFinite,
            "non-finite clock argument");
    require(gamma >= 0.0 && dtau >= 0.0, ErrorCode::InvalidArgument,
            "event_probability needs gamma >= 0 and dtau >= 0");
    return -std::expm1(-gamma * dtau);
}

pring::PseudoComplex time_evolution(double energy, double t) {
    return pring::exp(pring::PseudoComplex(0.0, -energy * t));
}

}  // namespace heatfield::kernels
