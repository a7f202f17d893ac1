#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace heatfield {

/// A point in d-dimensional space, 1 <= d <= 3. Diffusion constant is 1.
class SpacePoint {
public:
    static constexpr std::size_t kMaxDim = 3;

    explicit SpacePoint(std::size_t dim = 1);
    SpacePoint(std::initializer_list<double> coords);
    explicit SpacePoint(std::span<const double> coords);

    std::size_t dim() const noexcept { return dim_; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }
    double& operator[](std::size_t i) noexcept { return coords_[i]; }
    std::span<const double> coords() const noexcept { return {coords_.data(), dim_}; }

    friend bool operator==(const SpacePoint&, const SpacePoint&) = default;

private:
    std::array<double, kMaxDim> coords_{};
    std::size_t dim_;
};

/// Squared Euclidean distance; throws DimensionMismatch.
double squared_distance(const SpacePoint& x, const SpacePoint& y);

struct SpaceTimePoint {
    double time = 0.0;
    SpacePoint space;
};

/// Uniform 1-d grid: node i sits at origin + i * spacing.
struct UniformGrid {
    double origin = 0.0;
    double spacing = 1.0;
    std::size_t count = 2;

    UniformGrid() = default;
    UniformGrid(double origin, double spacing, std::size_t count);

    /// Grid with an odd node count, symmetric about 0, reaching at least
    /// `half_width` on each side.
    static UniformGrid symmetric(double half_width, double spacing);

    double node(std::size_t i) const noexcept { return origin + static_cast<double>(i) * spacing; }
    double front() const noexcept { return origin; }
    double back() const noexcept { return node(count - 1); }
    double half_width() const noexcept { return 0.5 * (back() - front()); }
};

/// Real values sampled on a uniform 1-d spatial grid. Immutable.
class SampledFunction {
public:
    SampledFunction(UniformGrid grid, std::vector<double> values);

    template <typename F>
    static SampledFunction tabulate(const UniformGrid& grid, F&& f) {
        std::vector<double> v(grid.count);
        for (std::size_t i = 0; i < grid.count; ++i) v[i] = f(grid.node(i));
        return SampledFunction(grid, std::move(v));
    }

    const UniformGrid& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Piecewise-linear interpolation; clamped to the edge values outside the grid.
    double interpolate(double x) const noexcept;

private:
    UniformGrid grid_;
    std::vector<double> values_;
};

/// Uniform time grid: `count` nodes starting at `start` with step `step`.
struct TimeGrid {
    double start = 0.0;
    double step = 1e-3;
    std::size_t count = 2;

    /// Grid on [0, t_max] with step as close to `step` as divides t_max.
    static TimeGrid covering(double t_max, double step);

    double node(std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
    double back() const noexcept { return node(count - 1); }
};

/// Values on a uniform time grid.
struct SampledCurve {
    double tau0 = 0.0;
    double h = 1e-3;
    std::vector<double> values;

    std::size_t size() const noexcept { return values.size(); }
    double time(std::size_t i) const noexcept { return tau0 + static_cast<double>(i) * h; }
    double back() const { return values.back(); }
};

}  // namespace heatfield
