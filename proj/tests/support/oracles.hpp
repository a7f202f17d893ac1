#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's solvers.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace heatfield::testing {

/// Frozen high-precision reference values (30-digit ODE integration).
struct Frozen {
    // A' = alpha - A + beta A^2, A(0) = 0, gamma = 1.
    static constexpr double kOnePointAlpha025Tau1 = 0.16439288929438534383556939716;
    static constexpr double kOnePointAlpha010Tau3 = 0.102060080929451016654890470197;
    static constexpr double kOnePointAlpha025Tau3 = 0.279764585542509828491055372572;
    static constexpr double kOnePointAlpha075Tau3 = 0.839293756627529485473166117716;
    static constexpr double kOnePointAlpha090Tau3 = 0.918540728365059101870212504277;
    // phi' = 0.25 + 0.75 phi^2 - phi, phi(0) = 0.5, at t = 1.
    static constexpr double kGeneratingAlpha025Theta05T1 = 0.445450437357613089234474154282;
    // M' = -M + beta A M, M(0) = 1, alpha = 0.25, at t = 2.
    static constexpr double kMassAlpha025T2 = 0.169544027457264612151258841099;
    static constexpr double kHeat1dUnit = 0.398942280401432677939946059934;
    static constexpr double kHeat2dHalf = 0.117099663048638321380484536933;
    static constexpr double kRetardedGamma1 = 0.146762663173739899894314429032;
};

/// Classic RK4 for a scalar autonomous ODE, fixed step.
inline double rk4_scalar(const std::function<double(double)>& f, double y0, double t, double h) {
    const auto steps = static_cast<std::size_t>(std::llround(t / h));
    const double dt = t / static_cast<double>(steps);
    double y = y0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double k1 = f(y);
        const double k2 = f(y + 0.5 * dt * k1);
        const double k3 = f(y + 0.5 * dt * k2);
        const double k4 = f(y + dt * k3);
        y += dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return y;
}

/// Riccati solution in exponential form: with s = |1 - 2 alpha|,
/// E = exp(-s gamma tau), r = (1 - s) / (2 beta), rho = (1 - s) / (1 + s),
/// A = r (1 - E) / (1 - rho E). Algebraically distinct from the coth form.
inline double one_point_exponential_form(double alpha, double gamma, double tau) {
    const double beta = 1.0 - alpha;
    const double s = std::abs(1.0 - 2.0 * alpha);
    if (s == 0.0) return gamma * tau / (gamma * tau + 2.0);
    const double e = std::exp(-s * gamma * tau);
    const double r = (1.0 - s) / (2.0 * beta);
    const double rho = (1.0 - s) / (1.0 + s);
    return r * (-std::expm1(-s * gamma * tau)) / (1.0 - rho * e);
}

/// Direct O(n^2) Picard step of the one-point recurrence on a uniform grid:
/// A_new(t_i) = alpha (1 - e^{-gamma t_i})
///            + gamma beta h sum_j w_j e^{-gamma w_j} A(t_i - w_j)^2.
inline std::vector<double> picard_step_direct(const std::vector<double>& a, double alpha,
                                              double gamma, double h) {
    const double beta = 1.0 - alpha;
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            const double w = (j == 0 || j == i) ? 0.5 : 1.0;
            const double sq = a[i - j] * a[i - j];
            acc += w * std::exp(-gamma * h * static_cast<double>(j)) * sq;
        }
        const double t = h * static_cast<double>(i);
        out[i] = alpha * (1.0 - std::exp(-gamma * t)) + (i ? gamma * beta * h * acc : 0.0);
    }
    return out;
}

inline double gaussian_pdf(double x, double variance) {
    return std::exp(-x * x / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

/// Relative distance |x - y| / max(|x|, |y|, floor).
inline double rel_err(double x, double y, double floor = 1e-300) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor});
}

}  // namespace heatfield::testing
