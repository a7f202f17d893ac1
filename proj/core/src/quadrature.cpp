#include "heatfield/quadrature.hpp"

#include <cmath>

#include "heatfield/errors.hpp"

namespace heatfield::quad {

double trapezoid(std::span<const double> values, double h) noexcept {
    if (values.size() < 2) return 0.0;
    double interior = 0.0;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) interior += values[i];
    return h * (interior + 0.5 * (values.front() + values.back()));
}

namespace {

struct Panel {
    double a, m, b;
    double fa, fm, fb;
    double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
              SimpsonResult& acc) {
    const double lm = 0.5 * (p.a + p.m);
    const double rm = 0.5 * (p.m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    acc.evaluations += 2;
    const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
    const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
    const double delta = left + right - p.whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        acc.error_estimate += std::abs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return refine(f, {p.a, lm, p.m, p.fa, flm, p.fm, left}, 0.5 * tol, depth - 1, acc) +
           refine(f, {p.m, rm, p.b, p.fm, frm, p.fb, right}, 0.5 * tol, depth - 1, acc);
}

}  // namespace

SimpsonResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_depth) {
    detail::require(std::isfinite(a) && std::isfinite(b) && b > a, ErrorCode::InvalidArgument,
                    "adaptive_simpson needs a finite interval with b > a");
    detail::require(abs_tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
    SimpsonResult acc;
    // A single coarse panel can miss a narrow peak entirely; start from
    // eight panels so the first error estimate already sees the integrand.
    constexpr int kPanels = 8;
    const double w = (b - a) / kPanels;
    double total = 0.0;
    double flo = f(a);
    ++acc.evaluations;
    for (int k = 0; k < kPanels; ++k) {
        const double lo = a + k * w;
        const double hi = (k + 1 == kPanels) ? b : lo + w;
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        const double fhi = f(hi);
        acc.evaluations += 2;
        total += refine(f, {lo, mid, hi, flo, fmid, fhi, simpson(lo, hi, flo, fmid, fhi)},
                        abs_tol / kPanels, max_depth, acc);
        flo = fhi;
    }
    acc.value = total;
    return acc;
}

}  // namespace heatfield::quad
