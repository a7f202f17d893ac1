#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace heatfield::quad {

/// Composite trapezoid rule over equally spaced samples.
double trapezoid(std::span<const double> values, double h) noexcept;

struct SimpsonResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
};

/// Adaptive Simpson quadrature on [a, b] with Richardson correction.
/// Subdivides until the local error estimate is below its share of
/// `abs_tol` or `max_depth` is reached.
SimpsonResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_depth = 50);

}  // namespace heatfield::quad
