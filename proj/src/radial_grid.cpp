#include "kgws/radial_grid.hpp"

#include <cmath>

#include "kgws/errors.hpp"

namespace kgws {

RadialGrid::RadialGrid(double r_min, double r_max, int num_points)
    : r_min_(r_min), r_max_(r_max), num_points_(num_points)
{
    if (!(r_min >= 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
        throw ValidationError("RadialGrid: requires r_max > r_min >= 0");
    if (num_points < 100) throw ValidationError("RadialGrid: requires at least 100 points");

    step_ = (r_max - r_min) / (num_points - 1);
    weights_.assign(num_points, step_);
    weights_.front() = 0.5 * step_;
    weights_.back() = 0.5 * step_;
}

RadialGrid RadialGrid::for_system(const SystemParams& p, int num_points, double extent_in_a)
{
    return RadialGrid(0.0, p.r0 + extent_in_a * p.a, num_points);
}

std::vector<double> RadialGrid::points() const
{
    std::vector<double> out(num_points_);
    for (int i = 0; i < num_points_; ++i) out[i] = r(i);
    return out;
}

std::vector<double> RadialGrid::simpson_weights() const
{
    if (num_points_ % 2 == 0) throw ValidationError("RadialGrid: Simpson rule needs an odd point count");
    std::vector<double> w(num_points_);
    for (int i = 0; i < num_points_; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * step_ / 3.0;
    w.front() = step_ / 3.0;
    w.back() = step_ / 3.0;
    return w;
}

RadialGrid RadialGrid::refined() const
{
    return RadialGrid(r_min_, r_max_, 2 * num_points_ - 1);
}

} // namespace kgws
