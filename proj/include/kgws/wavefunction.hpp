#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kgws/nu_spectrum.hpp"
#include "kgws/radial_grid.hpp"

namespace kgws {

/// z^a3 (2 - z)^A. Throws DomainError for z outside (0, 2).
double weight_function(double z, double a3, double A);

/// (2 - z)^(A/2) z^(a3/2) P_n^(a3, A)(1 - z) with the state's Jacobi
/// parameters. Throws DomainError outside (0, z_max].
double eigenfunction_unnormalized(double z, const BoundState& state);

/// phi and its first two derivatives with respect to x = r - r0.
struct PhiJet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

struct NormReport {
    double integral = 0.0;          ///< int |phi_unnormalized|^2 dr over [0, inf)
    double error_estimate = 0.0;
    double norm = 0.0;              ///< int |phi|^2 dr after normalization
    double fraction_beyond_z1 = 0.0;
    /// (beta/4) int_0^1 |phi_unnormalized|^2 (z - 2)/z dz, the alternative
    /// measure; reported, not used.
    double alt_measure_integral = 0.0;
};

struct Eigenfunction {
    BoundState state;
    double a3 = 0.0;
    double A = 0.0;
    double norm_constant = 0.0;
    double z_max = 0.0;
    NormReport report;

    /// Normalized phi at radius r >= 0.
    double operator()(double r) const;
    /// Normalized phi and its x-derivatives at radius r >= 0.
    PhiJet jet(double r) const;
};

/// Normalizes int_0^inf |phi(r)|^2 dr = 1 by adaptive Gauss-Kronrod
/// quadrature (relative tolerance 1e-10). Throws QuadratureFailure.
Eigenfunction normalize(const BoundState& state, const RadialGrid& grid);
Eigenfunction normalize(const BoundState& state);

/// b' from a composite Simpson rule on the grid, with no adaptivity.
double norm_constant_on_grid(const BoundState& state, const RadialGrid& grid);

/// b' from fixed 20-point Gauss-Legendre panels on [0, r_max].
double norm_constant_fixed_gauss(const BoundState& state, double r_max, int panels = 256);

/// Sign changes of phi strictly inside (0, z_max).
int count_nodes(const Eigenfunction& phi, int samples = 20000);

struct ClosedFormNormDiagnostic {
    /// b'^2 from the double sum over Jacobi expansion terms with each
    /// z-integral evaluated exactly through 2F1(-A-1, b; b+1; 1/2).
    double b_sq_exact_terms = 0.0;
    /// b'^2 when every term uses the special-value 2F1 closed form.
    double b_sq_closed_form = 0.0;
    int terms = 0;
    int terms_condition_held = 0;
    /// Per (m, s) term: whether m + s + a3 - A = 2.
    std::vector<bool> condition_held;
    double quadrature_b = 0.0;
    double ratio_exact_terms = 0.0;  ///< sqrt(b_sq_exact_terms) / quadrature_b, NaN if negative
    double ratio_closed_form = 0.0;  ///< sqrt(b_sq_closed_form) / quadrature_b, NaN if negative
    std::string status;
};

/// Evaluates the hypergeometric closed form of the normalization constant
/// and compares it with the quadrature value. Never throws on a violated side
/// condition; it is recorded in the result.
ClosedFormNormDiagnostic closed_form_norm_diagnostic(const Eigenfunction& phi);

/// (r, phi(r)) for every grid point, in grid order.
std::vector<std::pair<double, double>> sample_on_r_grid(const Eigenfunction& phi, const RadialGrid& grid);

} // namespace kgws
