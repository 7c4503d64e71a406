#pragma once

#include <string_view>
#include <vector>

#include "kgws/physics_model.hpp"

namespace kgws {

enum class Branch { particle, antiparticle };

/// +1 for particle, -1 for antiparticle.
int branch_sign(Branch b);
std::string_view to_string(Branch b);

/// Energy-dependent coefficients of the hypergeometric-type equation in z.
/// The "squares" are signed; they are not guaranteed to be non-negative.
struct SpectralCoefficients {
    double a1_sq = 0.0;
    double a2_sq = 0.0;
    double a3_sq = 0.0;
    double omega1_sq = 0.0;  ///< 1 / (beta r0)^2
    double omega2_sq = 0.0;  ///< 1 / (hbar c beta)^2, MeV^-2
};

SpectralCoefficients spectral_coefficients(double energy, int l, const SystemParams& p,
                                           const PekerisCoefficients& d);

/// Signs attached to the square roots A = sqrt(a3^2 + 2 a2^2 + 4 a1^2) and
/// a3 = sqrt(a3^2). Each of the four choices picks one of the four
/// polynomials pi(z) allowed by the vanishing discriminant; {+1, +1} is the
/// choice whose tau(z) has the steepest negative slope and is the default.
struct RootSigns {
    int A = +1;
    int a3 = +1;

    friend bool operator==(const RootSigns&, const RootSigns&) = default;
};

/// The four sign choices, default first.
inline constexpr RootSigns all_root_signs[4] = {{+1, +1}, {-1, +1}, {+1, -1}, {-1, -1}};

struct NUQuantization {
    double A = 0.0;         ///< signed per `signs`
    double a3 = 0.0;        ///< signed per `signs`
    double k1 = 0.0;        ///< -(a2^2 + a3^2)/2 - a3 A / 2
    double k2 = 0.0;        ///< -(a2^2 + a3^2)/2 + a3 A / 2
    double lambda = 0.0;
    double lambda_n = 0.0;
    double tau_slope = 0.0; ///< always < 0
    RootSigns signs;

    double residual() const { return lambda - lambda_n; }
};

/// Throws DomainError when a3^2 < 0, A^2 < 0 or the resulting tau'(z) >= 0.
NUQuantization nu_quantization(const SpectralCoefficients& c, int n, RootSigns signs = {});
NUQuantization nu_quantization(double energy, int n, int l, const SystemParams& p,
                               const PekerisCoefficients& d, RootSigns signs = {});

/// lambda(E) - lambda_n(E). Bound-state energies are its roots.
double quantization_residual(double energy, int n, int l, const SystemParams& p,
                             const PekerisCoefficients& d, RootSigns signs = {});

/// -(2n + 1) + sqrt(1 + 4 a1^2). Throws DomainError when 1 + 4 a1^2 < 0.
double principal_N(int n, double a1_sq);

/// The mass-dependent term entering the closed-form radicand.
///
/// `squared` is the algebraically consistent signed value; the square of a
/// real m1-tilde exists only when it is non-negative. `printed_squared` keeps
/// the 16x larger historical form for comparison against tabulated values.
struct MassShift {
    double squared = 0.0;
    double printed_squared = 0.0;

    bool is_real() const { return squared >= 0.0; }
    /// sqrt(squared); throws DomainError for a negative radicand.
    double value() const;
};

MassShift mass_shift_m1_tilde(int n, int l, const SystemParams& p, const PekerisCoefficients& d);

/// Which form of the mass-shift term the closed form should use.
enum class MassShiftForm { consistent, printed };

/// Closed-form E_{n,l}. Throws NoBoundState when a radicand is negative,
/// the denominator vanishes, or |E| >= m0 c^2.
double energy_closed_form(int n, int l, Branch branch, const SystemParams& p,
                          const PekerisCoefficients& d,
                          MassShiftForm form = MassShiftForm::consistent);

/// The same spectrum with m1 = 0, written out without the mass-shift terms.
double energy_constant_mass(int n, int l, Branch branch, const SystemParams& p,
                            const PekerisCoefficients& d);

/// Mid-point of the two branches; E(+) + E(-) = 2 * this.
double branch_midpoint(int n, int l, const SystemParams& p, const PekerisCoefficients& d);

struct BoundState {
    int n = 0;
    int l = 0;
    Branch branch = Branch::particle;
    double energy = 0.0;
    double N = 0.0;
    double m1_tilde_sq = 0.0;
    SpectralCoefficients coeffs;
    /// Root signs on which lambda(E) = lambda_n(E) holds.
    RootSigns signs;
    double jacobi_a3 = 0.0;
    double jacobi_A = 0.0;
    double residual = 0.0;
    SystemParams params;
    PekerisCoefficients pekeris;

    /// True when the state satisfies the quantization with both roots positive.
    bool on_default_roots() const { return signs == RootSigns{}; }
    /// Both Jacobi parameters exceed -1.
    bool jacobi_regular() const { return jacobi_a3 > -1.0 && jacobi_A > -1.0; }
};

/// Closed-form state with its NU bookkeeping resolved. Throws NoBoundState
/// when the energy is unavailable or only satisfies the quantization with
/// a3 < 0 (a solution growing as r -> infinity).
BoundState solve_bound_state(int n, int l, Branch branch, const SystemParams& p,
                             const PekerisCoefficients& d);
BoundState solve_bound_state(int n, int l, Branch branch, const SystemParams& p);

/// Polynomial form of the quantization: the product over the four root-sign
/// choices of (N - sA |A| - s3 |a3|), expressed without square roots so it is
/// defined on the whole energy axis. Quadratic in E.
double symmetrized_quantization(double energy, int n, int l, const SystemParams& p,
                                const PekerisCoefficients& d);

struct RootSolution {
    double energy = 0.0;
    double residual = 0.0;
    RootSigns signs;
    /// Every root of the scan on (-m0c^2, m0c^2), ascending.
    std::vector<double> candidates;
};

/// Independent oracle: scans the quantization condition for sign changes on
/// a 10^4-point grid, refines each bracket, identifies the root signs and
/// returns the root belonging to `branch`. Throws NoBoundState /
/// AmbiguousRoot.
RootSolution solve_energy_by_root(int n, int l, Branch branch, const SystemParams& p,
                                  const PekerisCoefficients& d);

} // namespace kgws
