#pragma once

#include <vector>

#include "kgws/physics_model.hpp"

namespace kgws {

/// Uniform radial mesh with trapezoid weights.
class RadialGrid {
public:
    /// Throws ValidationError unless r_max > r_min >= 0 and num_points >= 100.
    RadialGrid(double r_min, double r_max, int num_points);

    /// [0, r0 + extent_in_a * a].
    static RadialGrid for_system(const SystemParams& p, int num_points = 4001, double extent_in_a = 25.0);

    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    int size() const { return num_points_; }
    double step() const { return step_; }
    double r(int i) const { return i == num_points_ - 1 ? r_max_ : r_min_ + step_ * i; }
    std::vector<double> points() const;

    /// Trapezoid weights; they sum to r_max - r_min.
    const std::vector<double>& weights() const { return weights_; }

    /// Composite Simpson weights. Throws ValidationError for an even point count.
    std::vector<double> simpson_weights() const;

    /// Same interval with the spacing halved (2N - 1 points).
    RadialGrid refined() const;

private:
    double r_min_;
    double r_max_;
    int num_points_;
    double step_;
    std::vector<double> weights_;
};

} // namespace kgws
