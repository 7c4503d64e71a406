#pragma once

#include "kgws/constants.hpp"

namespace kgws {

/// Physical inputs of the generalized Woods-Saxon problem.
///
/// Energies are in MeV, lengths in fm, masses in amu. Masses are converted to
/// rest energies through `amu_to_mev` whenever they enter an equation.
struct SystemParams {
    double V0 = 47.78;     ///< potential depth (MeV)
    double q = 1.0;        ///< deformation parameter
    double r0 = 4.91623;   ///< potential width (fm)
    double a = 0.65;       ///< surface diffuseness (fm)
    double m0 = 1.007825;  ///< constant part of the rest mass (amu)
    double m1 = 0.0;       ///< position-dependent part of the rest mass (amu)
    double hbar_c = constants::hbar_c;
    double amu_to_mev = constants::amu_to_mev;

    double beta() const { return 1.0 / a; }
    double rest_energy() const { return m0 * amu_to_mev; }
    double mass_shift_energy() const { return m1 * amu_to_mev; }

    /// Throws ValidationError unless V0 > 0, q > 0, r0 > 0, a > 0 and m0 > m1 >= 0.
    void validate() const;
};

/// The proton + A = 56 system used for the reference energy table.
SystemParams reference_system(double m1 = 0.0, double a = 0.65);

/// Coefficients of the replacement centrifugal form D0 + D1 u + D2 u^2.
struct PekerisCoefficients {
    double D0 = 0.0;
    double D1 = 0.0;
    double D2 = 0.0;
};

/// -V0 / (1 + q exp(beta (r - r0))).
double woods_saxon_potential(double r, const SystemParams& p);

/// m(x) c^2 in MeV with x = r - r0.
double mass_energy(double x, const SystemParams& p);

/// u(x) = 1 / (1 + q exp(beta x)), evaluated without overflow for large |x|.
double surface_fraction(double x, const SystemParams& p);

/// Throws DomainError for beta r0 <= 0 or q <= 0.
PekerisCoefficients pekeris_coefficients(const SystemParams& p);

/// (l(l+1)/r0^2) (D0 + D1 u + D2 u^2) in fm^-2.
double centrifugal_approx(double x, int l, const SystemParams& p, const PekerisCoefficients& d);
double centrifugal_approx(double x, int l, const SystemParams& p);

/// l(l+1)/r^2 in fm^-2. Throws DomainError for r <= 0 unless l = 0.
double centrifugal_exact(double r, int l);

/// z = 2 / (1 + q exp(beta x)) in (0, 2).
double z_of_x(double x, const SystemParams& p);

/// Inverse of z_of_x. Throws DomainError for z outside (0, 2).
double x_of_z(double z, const SystemParams& p);

/// z at r = 0, the largest z reachable on the physical half line.
double z_max(const SystemParams& p);

} // namespace kgws
