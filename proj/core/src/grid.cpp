#include "heatfield/grid.hpp"

#include <algorithm>
#include <cmath>

#include "heatfield/errors.hpp"

namespace heatfield {

using detail::require;

SpacePoint::SpacePoint(std::size_t dim) : dim_(dim) {
    require(dim >= 1 && dim <= kMaxDim, ErrorCode::InvalidArgument, "dimension must be 1, 2 or 3");
}

SpacePoint::SpacePoint(std::initializer_list<double> coords)
    : SpacePoint(std::span<const double>(coords.begin(), coords.size())) {}

SpacePoint::SpacePoint(std::span<const double> coords) : SpacePoint(coords.size()) {
    for (std::size_t i = 0; i < dim_; ++i) {
        require(std::isfinite(coords[i]), ErrorCode::NonFinite, "non-finite coordinate");
        coords_[i] = coords[i];
    }
}

double squared_distance(const SpacePoint& x, const SpacePoint& y) {
    require(x.dim() == y.dim(), ErrorCode::DimensionMismatch, "points differ in dimension");
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double d = x[i] - y[i];
        r2 += d * d;
    }
    return r2;
}

UniformGrid::UniformGrid(double origin_, double spacing_, std::size_t count_)
    : origin(origin_), spacing(spacing_), count(count_) {
    require(std::isfinite(origin) && std::isfinite(spacing), ErrorCode::NonFinite, "non-finite grid");
    require(spacing > 0.0, ErrorCode::InvalidArgument, "grid spacing must be positive");
    require(count >= 2, ErrorCode::InvalidArgument, "grid needs at least two nodes");
}

UniformGrid UniformGrid::symmetric(double half_width, double spacing) {
    require(half_width > 0.0 && spacing > 0.0, ErrorCode::InvalidArgument,
            "symmetric grid needs positive half-width and spacing");
    const auto half = static_cast<std::size_t>(std::ceil(half_width / spacing - 1e-9));
    return UniformGrid(-static_cast<double>(half) * spacing, spacing, 2 * half + 1);
}

SampledFunction::SampledFunction(UniformGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    require(values_.size() == grid_.count, ErrorCode::InvalidArgument,
            "value count does not match grid");
    require(std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); }),
            ErrorCode::NonFinite, "sampled function has non-finite values");
}

double SampledFunction::interpolate(double x) const noexcept {
    const double s = (x - grid_.origin) / grid_.spacing;
    if (!(s > 0.0)) return values_.front();
    const double last = static_cast<double>(grid_.count - 1);
    if (s >= last) return values_.back();
    const auto i = static_cast<std::size_t>(s);
    const double frac = s - static_cast<double>(i);
    return values_[i] + frac * (values_[i + 1] - values_[i]);
}

TimeGrid TimeGrid::covering(double t_max, double step) {
    require(t_max >= 0.0 && step > 0.0, ErrorCode::InvalidArgument,
            "time grid needs t_max >= 0 and step > 0");
    if (t_max == 0.0) return TimeGrid{0.0, step, 1};
    const auto intervals = static_cast<std::size_t>(std::max(1.0, std::round(t_max / step)));
    return TimeGrid{0.0, t_max / static_cast<double>(intervals), intervals + 1};
}

}  // namespace heatfield
