#include "kgws/calibration.hpp"

#include <cmath>
#include <limits>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

double anchor_energy(const SystemParams& base, double a)
{
    SystemParams p = base;
    p.a = a;
    p.m1 = 0.0;
    return energy_closed_form(0, 0, Branch::particle, p, pekeris_coefficients(p));
}

double objective(const SystemParams& base, double a, double target)
{
    try {
        return std::abs(std::abs(anchor_energy(base, a)) - target);
    } catch (const std::exception&) {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace

CalibrationResult calibrate_diffuseness(const SystemParams& base, double target, double tolerance, double a_lo,
                                        double a_hi)
{
    auto finish = [&](double a) {
        CalibrationResult res;
        res.a = a;
        const double dev = objective(base, a, target);
        if (std::isfinite(dev)) res.energy = anchor_energy(base, a);
        res.relative_deviation = dev / target;
        res.within_tolerance = res.relative_deviation <= tolerance;
        return res;
    };

    if (base.a >= a_lo && base.a <= a_hi && objective(base, base.a, target) <= tolerance * target)
        return finish(base.a);

    const int coarse = 90;
    const double step = (a_hi - a_lo) / coarse;
    int best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= coarse; ++k) {
        const double v = objective(base, a_lo + step * k, target);
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }

    double lo = a_lo + step * std::max(best - 1, 0);
    double hi = a_lo + step * std::min(best + 1, coarse);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = objective(base, c, target);
    double fd = objective(base, d, target);
    while (hi - lo > 1e-6) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = objective(base, c, target);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = objective(base, d, target);
        }
    }
    return finish(0.5 * (lo + hi));
}

} // namespace kgws
