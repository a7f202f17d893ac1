#include "heatfield/dyson.hpp"

#include <algorithm>
#include <cmath>

#include "heatfield/errors.hpp"
#include "heatfield/kernels.hpp"
#include "heatfield/quadrature.hpp"

namespace heatfield::dyson {

using detail::fail;
using detail::require;

namespace {

void validate_alpha_gamma(double alpha, double gamma) {
    require(std::isfinite(alpha) && std::isfinite(gamma), ErrorCode::NonFinite,
            "non-finite model parameter");
    require(alpha >= 0.0 && alpha <= 1.0, ErrorCode::InvalidArgument, "alpha must lie in [0,1]");
    require(gamma >= 0.0, ErrorCode::InvalidArgument, "gamma must be non-negative");
}

void validate_grid(const TimeGrid& grid) {
    require(grid.start == 0.0, ErrorCode::InvalidArgument, "time grid must start at 0");
    require(grid.step > 0.0 && std::isfinite(grid.step), ErrorCode::InvalidArgument,
            "time step must be positive");
    require(grid.count >= 1, ErrorCode::InvalidArgument, "time grid is empty");
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// J_i = h * sum_j w_j e^{-gamma (t_i - t_j)} f_j with trapezoid weights,
// accumulated with the one-step recursion the exponential kernel admits.
void damped_trapezoid(std::span<const double> f, double gamma, double h, std::span<double> out) {
    const double decay = std::exp(-gamma * h);
    double acc = 0.0;
    out[0] = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) {
        acc = decay * acc + 0.5 * h * (decay * f[i - 1] + f[i]);
        out[i] = acc;
    }
}

std::vector<double> sampled_one_point(double alpha, double gamma, const TimeGrid& grid) {
    std::vector<double> a(grid.count);
    for (std::size_t i = 0; i < grid.count; ++i)
        a[i] = one_point_closed_form(alpha, gamma, grid.node(i));
    return a;
}

}  // namespace

double one_point_closed_form(double alpha, double gamma, double tau) {
    validate_alpha_gamma(alpha, gamma);
    require(std::isfinite(tau) && tau >= 0.0, ErrorCode::InvalidArgument, "tau must be >= 0");
    const double beta = 1.0 - alpha;
    const double gt = gamma * tau;
    if (gt == 0.0) return 0.0;
    if (beta == 0.0) return -std::expm1(-gt);
    if (alpha == 0.0) return 0.0;
    if (alpha == 0.5) return 1.0 - 2.0 / (gt + 2.0);
    const double s = std::abs(1.0 - 2.0 * alpha);
    const double u = 0.5 * s * gt + std::atanh(s);
    return (1.0 - s / std::tanh(u)) / (2.0 * beta);
}

SampledCurve one_point_ode(const FertilityDistribution& fertility, double gamma, double theta0,
                           const TimeGrid& grid, int substeps) {
    validate_grid(grid);
    require(std::isfinite(gamma) && gamma >= 0.0, ErrorCode::InvalidArgument,
            "gamma must be non-negative");
    require(theta0 >= 0.0 && theta0 <= 1.0, ErrorCode::InvalidArgument, "theta must lie in [0,1]");
    require(substeps >= 1, ErrorCode::InvalidArgument, "substeps must be >= 1");

    const auto rhs = [&](double phi) { return gamma * (w_eval(fertility, phi) - phi); };
    const double h = grid.step / substeps;
    SampledCurve curve{grid.start, grid.step, std::vector<double>(grid.count)};
    double phi = theta0;
    curve.values[0] = phi;
    for (std::size_t i = 1; i < grid.count; ++i) {
        for (int k = 0; k < substeps; ++k) {
            const double k1 = rhs(phi);
            const double k2 = rhs(phi + 0.5 * h * k1);
            const double k3 = rhs(phi + 0.5 * h * k2);
            const double k4 = rhs(phi + h * k3);
            phi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        if (!(phi >= -1e-9 && phi <= 1.0 + 1e-9))
            fail(ErrorCode::StabilityViolation,
                 "generating function left [0,1] at t = " + std::to_string(grid.node(i)));
        curve.values[i] = phi;
    }
    return curve;
}

std::vector<SampledCurve> one_point_picard_sequence(double alpha, double gamma,
                                                    const TimeGrid& grid, int order) {
    validate_alpha_gamma(alpha, gamma);
    validate_grid(grid);
    require(order >= 1, ErrorCode::InvalidArgument, "Picard order must be >= 1");

    const double beta = 1.0 - alpha;
    const std::size_t n = grid.count;
    std::vector<double> first(n);
    for (std::size_t i = 0; i < n; ++i) first[i] = -alpha * std::expm1(-gamma * grid.node(i));

    std::vector<SampledCurve> iterates;
    iterates.reserve(static_cast<std::size_t>(order));
    std::vector<double> current(n, 0.0);
    std::vector<double> squared(n);
    std::vector<double> conv(n);
    for (int k = 0; k < order; ++k) {
        for (std::size_t i = 0; i < n; ++i) squared[i] = current[i] * current[i];
        damped_trapezoid(squared, gamma, grid.step, conv);
        for (std::size_t i = 0; i < n; ++i) current[i] = first[i] + gamma * beta * conv[i];
        iterates.push_back(SampledCurve{grid.start, grid.step, current});
    }
    return iterates;
}

SampledCurve one_point_picard(double alpha, double gamma, const TimeGrid& grid, int order) {
    return std::move(one_point_picard_sequence(alpha, gamma, grid, order).back());
}

double extinction_probability(double alpha) {
    require(std::isfinite(alpha) && alpha >= 0.0 && alpha <= 1.0, ErrorCode::InvalidArgument,
            "alpha must lie in [0,1]");
    return alpha < 0.5 ? alpha / (1.0 - alpha) : 1.0;
}

namespace {

void mass_map(std::span<const double> a, std::span<const double> m, double gamma, double beta,
              double h, std::span<double> out) {
    const std::size_t n = a.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = a[i] * m[i];
    damped_trapezoid(f, gamma, h, out);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(-gamma * (static_cast<double>(i) * h)) + gamma * beta * out[i];
}

}  // namespace

SampledCurve mass_curve(double alpha, double gamma, const TimeGrid& grid) {
    validate_alpha_gamma(alpha, gamma);
    validate_grid(grid);
    constexpr double kTol = 1e-10;
    constexpr std::size_t kMaxIter = 10000;

    const double beta = 1.0 - alpha;
    const auto a = sampled_one_point(alpha, gamma, grid);
    std::vector<double> m(grid.count, 0.0);
    std::vector<double> next(grid.count);
    for (std::size_t it = 0; it < kMaxIter; ++it) {
        mass_map(a, m, gamma, beta, grid.step, next);
        const double delta = sup_distance(m, next);
        m.swap(next);
        if (delta < kTol) return SampledCurve{grid.start, grid.step, std::move(m)};
    }
    fail(ErrorCode::NoConvergence, "mass curve Picard iteration did not converge");
}

double mass_curve_residual(const SampledCurve& mass, double alpha, double gamma) {
    validate_alpha_gamma(alpha, gamma);
    const TimeGrid grid{mass.tau0, mass.h, mass.size()};
    validate_grid(grid);
    const auto a = sampled_one_point(alpha, gamma, grid);
    std::vector<double> image(mass.size());
    mass_map(a, mass.values, gamma, 1.0 - alpha, mass.h, image);
    return sup_distance(mass.values, image);
}

SpaceTimeField::SpaceTimeField(TimeGrid time, UniformGrid space)
    : time_(time), space_(space), values_(time.count * space.count, 0.0) {}

double SpaceTimeField::slice_mass(std::size_t i) const noexcept {
    return quad::trapezoid(slice(i), space_.spacing);
}

namespace {

// Discretised two-point operator. For slice i (t_i = i k):
//   T(D)_i = B_i + gamma beta k [ A(t_i) D_i / 2
//            + sum_{j=1}^{i-1} e^{-gamma t_j} A(t_{i-j}) (p_{t_j} * D_{i-j}) ]
// The w0 = 0 endpoint uses p_0 = delta; the w0 = t_i endpoint drops out
// because A(0) = 0. Spatial convolutions are trapezoid sums on the grid with
// the field taken as zero beyond it.
class TwoPointOperator {
public:
    TwoPointOperator(double alpha, double gamma, const TimeGrid& time, const UniformGrid& space)
        : gamma_(gamma), beta_(1.0 - alpha), time_(time), space_(space),
          one_point_(sampled_one_point(alpha, gamma, time)) {
        kernels_.resize(time.count);
        for (std::size_t j = 1; j < time.count; ++j) {
            const double t = time.node(j);
            const double reach = 9.2 * std::sqrt(t);
            const auto m_max = std::min<std::size_t>(
                space.count - 1, static_cast<std::size_t>(std::ceil(reach / space.spacing)));
            auto& k = kernels_[j];
            k.resize(m_max + 1);
            for (std::size_t m = 0; m <= m_max; ++m)
                k[m] = space.spacing * kernels::heat_kernel_1d(t, static_cast<double>(m) * space.spacing);
        }
    }

    // Everything in T(D)_i except the implicit A(t_i) D_i / 2 term.
    void explicit_part(const SpaceTimeField& field, std::size_t i, std::span<double> out) const {
        const std::size_t nx = space_.count;
        const SpaceTimePoint origin{0.0, SpacePoint{0.0}};
        for (std::size_t a = 0; a < nx; ++a)
            out[a] = kernels::retarded_propagator_heat(
                origin, SpaceTimePoint{time_.node(i), SpacePoint{space_.node(a)}}, gamma_);
        if (beta_ == 0.0) return;

        const double scale = gamma_ * beta_ * time_.step;
        std::vector<double> weighted(nx);
        for (std::size_t j = 1; j < i; ++j) {
            const double coeff = scale * std::exp(-gamma_ * time_.node(j)) * one_point_[i - j];
            if (coeff == 0.0) continue;
            const auto src = field.slice(i - j);
            std::copy(src.begin(), src.end(), weighted.begin());
            weighted.front() *= 0.5;
            weighted.back() *= 0.5;
            const auto& k = kernels_[j];
            const std::size_t reach = k.size() - 1;
            for (std::size_t a = 0; a < nx; ++a) {
                const std::size_t lo = a > reach ? a - reach : 0;
                const std::size_t hi = std::min(nx - 1, a + reach);
                double acc = 0.0;
                for (std::size_t b = lo; b <= hi; ++b) acc += k[a > b ? a - b : b - a] * weighted[b];
                out[a] += coeff * acc;
            }
        }
    }

    double implicit_coefficient(std::size_t i) const noexcept {
        return 0.5 * gamma_ * beta_ * time_.step * one_point_[i];
    }

private:
    double gamma_;
    double beta_;
    TimeGrid time_;
    UniformGrid space_;
    std::vector<double> one_point_;
    std::vector<std::vector<double>> kernels_;
};

}  // namespace

SpaceTimeField two_point_picard(double alpha, double gamma, const TwoPointSpec& spec, double tol,
                                std::size_t max_iter) {
    validate_alpha_gamma(alpha, gamma);
    require(spec.t_max > 0.0 && spec.time_step > 0.0 && spec.space_step > 0.0,
            ErrorCode::InvalidArgument, "two-point grid needs positive extents and steps");
    require(tol > 0.0 && max_iter >= 1, ErrorCode::InvalidArgument,
            "two-point iteration needs tol > 0 and max_iter >= 1");
    if (spec.half_width < kernels::semigroup_margin(spec.t_max))
        fail(ErrorCode::GridTooNarrow, "spatial half-width must be at least 6*sqrt(t_max)");

    SpaceTimeField field(TimeGrid::covering(spec.t_max, spec.time_step),
                         UniformGrid::symmetric(spec.half_width, spec.space_step));
    const TwoPointOperator op(alpha, gamma, field.time(), field.space());

    const std::size_t nx = field.space_count();
    std::vector<double> base(nx);
    for (std::size_t i = 1; i < field.time_count(); ++i) {
        op.explicit_part(field, i, base);
        const double c = op.implicit_coefficient(i);
        auto d = field.slice(i);
        std::size_t sweeps = 0;
        if (c == 0.0) {
            std::copy(base.begin(), base.end(), d.begin());
            field.iterations = std::max<std::size_t>(field.iterations, 1);
            continue;
        }
        for (;;) {
            if (++sweeps > max_iter)
                fail(ErrorCode::NoConvergence,
                     "two-point slice " + std::to_string(i) + " did not converge");
            double delta = 0.0;
            for (std::size_t a = 0; a < nx; ++a) {
                const double next = base[a] + c * d[a];
                delta = std::max(delta, std::abs(next - d[a]));
                d[a] = next;
            }
            if (delta < tol) break;
        }
        field.iterations = std::max(field.iterations, sweeps);
    }
    return field;
}

double two_point_residual(const SpaceTimeField& field, double alpha, double gamma) {
    validate_alpha_gamma(alpha, gamma);
    const TwoPointOperator op(alpha, gamma, field.time(), field.space());
    std::vector<double> image(field.space_count());
    double residual = 0.0;
    for (std::size_t i = 1; i < field.time_count(); ++i) {
        op.explicit_part(field, i, image);
        const double c = op.implicit_coefficient(i);
        const auto d = field.slice(i);
        for (std::size_t a = 0; a < image.size(); ++a)
            residual = std::max(residual, std::abs(d[a] - (image[a] + c * d[a])));
    }
    return residual;
}

}  // namespace heatfield::dyson
