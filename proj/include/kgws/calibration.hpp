#pragma once

#include "kgws/nu_spectrum.hpp"

namespace kgws {

inline constexpr double table1_anchor_energy = 171.920;

struct CalibrationResult {
    double a = 0.0;
    double energy = 0.0;          ///< signed E(0, 0; m1 = 0) at `a`
    double relative_deviation = 0.0;
    bool within_tolerance = false;
};

/// Chooses the diffuseness a in [a_lo, a_hi] minimizing
/// | |E(0, 0; m1 = 0)| - target | on the particle branch. The default a of
/// `base` is tried first and kept when it already meets `tolerance`;
/// otherwise a coarse scan brackets the minimum and golden-section search
/// refines it to 1e-6 fm. Never throws on a miss; see `within_tolerance`.
CalibrationResult calibrate_diffuseness(const SystemParams& base, double target = table1_anchor_energy,
                                        double tolerance = 1e-3, double a_lo = 0.3, double a_hi = 1.2);

} // namespace kgws
