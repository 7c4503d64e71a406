#include "kgws/physics_model.hpp"

#include <cmath>
#include <string>

#include "kgws/errors.hpp"

namespace kgws {

void SystemParams::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok) throw ValidationError(what);
    };
    require(std::isfinite(V0) && V0 > 0.0, "V0 must be a positive finite depth");
    require(std::isfinite(q) && q > 0.0, "q must be positive");
    require(std::isfinite(r0) && r0 > 0.0, "r0 must be positive");
    require(std::isfinite(a) && a > 0.0, "a must be positive");
    require(std::isfinite(m1) && m1 >= 0.0, "m1 must be non-negative");
    require(std::isfinite(m0) && m0 > m1, "m0 must exceed m1");
    require(hbar_c > 0.0 && amu_to_mev > 0.0, "physical constants must be positive");
}

SystemParams reference_system(double m1, double a)
{
    SystemParams p;
    p.m1 = m1;
    p.a = a;
    return p;
}

double surface_fraction(double x, const SystemParams& p)
{
    return 1.0 / (1.0 + p.q * std::exp(p.beta() * x));
}

double woods_saxon_potential(double r, const SystemParams& p)
{
    return -p.V0 * surface_fraction(r - p.r0, p);
}

double mass_energy(double x, const SystemParams& p)
{
    return p.rest_energy() - p.mass_shift_energy() * surface_fraction(x, p);
}

// The coefficients follow from requiring D0 + D1 u + D2 u^2 to reproduce
// 1, -2/r0 and 6/r0^2 for the value and first two derivatives of
// (1 + x/r0)^-2 at x = 0, for any q > 0.
PekerisCoefficients pekeris_coefficients(const SystemParams& p)
{
    const double t = p.beta() * p.r0;
    if (!(t > 0.0) || !std::isfinite(t))
        throw DomainError("pekeris_coefficients: beta*r0 must be positive, got " + std::to_string(t));
    if (!(p.q > 0.0))
        throw DomainError("pekeris_coefficients: q must be positive");

    const double q = p.q;
    const double qp = 1.0 + q;
    const double pre = 1.0 / (t * q * q);

    PekerisCoefficients d;
    d.D0 = 1.0 - qp * pre * (-3.0 * qp / t + 3.0 * q - 1.0);
    d.D1 = qp * qp * pre * (-6.0 * qp / t + 4.0 * q - 2.0);
    d.D2 = qp * qp * qp * pre * (3.0 * qp / t + 1.0 - q);
    return d;
}

double centrifugal_approx(double x, int l, const SystemParams& p, const PekerisCoefficients& d)
{
    if (l < 0) throw DomainError("centrifugal_approx: l must be non-negative");
    if (l == 0) return 0.0;
    const double u = surface_fraction(x, p);
    const double ll = static_cast<double>(l) * (l + 1);
    return ll / (p.r0 * p.r0) * (d.D0 + d.D1 * u + d.D2 * u * u);
}

double centrifugal_approx(double x, int l, const SystemParams& p)
{
    return centrifugal_approx(x, l, p, pekeris_coefficients(p));
}

double centrifugal_exact(double r, int l)
{
    if (l < 0) throw DomainError("centrifugal_exact: l must be non-negative");
    if (l == 0) return 0.0;
    if (!(r > 0.0)) throw DomainError("centrifugal_exact: singular at r = 0 for l > 0");
    return static_cast<double>(l) * (l + 1) / (r * r);
}

double z_of_x(double x, const SystemParams& p)
{
    return 2.0 * surface_fraction(x, p);
}

double x_of_z(double z, const SystemParams& p)
{
    if (!(z > 0.0 && z < 2.0))
        throw DomainError("x_of_z: z must lie in (0, 2), got " + std::to_string(z));
    return (std::log(2.0 - z) - std::log(z) - std::log(p.q)) / p.beta();
}

double z_max(const SystemParams& p)
{
    return z_of_x(-p.r0, p);
}

} // namespace kgws
