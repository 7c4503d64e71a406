#include "kgws/nu_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

double angular_factor(int l)
{
    if (l < 0) throw DomainError("angular momentum must be non-negative");
    return static_cast<double>(l) * (l + 1);
}

void check_n(int n)
{
    if (n < 0) throw DomainError("radial quantum number must be non-negative");
}

std::string state_label(int n, int l)
{
    return "(n=" + std::to_string(n) + ", l=" + std::to_string(l) + ")";
}

// Inputs shared by the closed-form expressions.
struct ClosedFormTerms {
    double V0;
    double M;
    double omega1_sq;
    double omega2_sq;
    double L;
    PekerisCoefficients d;
};

ClosedFormTerms closed_form_terms(int l, const SystemParams& p, const PekerisCoefficients& d)
{
    const double beta = p.beta();
    return {p.V0,
            p.rest_energy(),
            1.0 / (beta * beta * p.r0 * p.r0),
            1.0 / (p.hbar_c * p.hbar_c * beta * beta),
            angular_factor(l),
            d};
}

} // namespace

int branch_sign(Branch b)
{
    return b == Branch::particle ? +1 : -1;
}

std::string_view to_string(Branch b)
{
    return b == Branch::particle ? "particle" : "antiparticle";
}

SpectralCoefficients spectral_coefficients(double energy, int l, const SystemParams& p,
                                           const PekerisCoefficients& d)
{
    const double L = angular_factor(l);
    const double beta = p.beta();
    const double M = p.rest_energy();
    const double M1 = p.mass_shift_energy();

    SpectralCoefficients c;
    c.omega1_sq = 1.0 / (beta * beta * p.r0 * p.r0);
    c.omega2_sq = 1.0 / (p.hbar_c * p.hbar_c * beta * beta);
    c.a1_sq = c.omega1_sq * L * d.D2 + c.omega2_sq * (M1 * M1 - p.V0 * p.V0);
    c.a2_sq = 2.0 * (c.omega1_sq * L * d.D1 - 2.0 * c.omega2_sq * (M * M1 + energy * p.V0));
    c.a3_sq = 4.0 * (c.omega1_sq * L * d.D0 + c.omega2_sq * (M * M - energy * energy));
    return c;
}

NUQuantization nu_quantization(const SpectralCoefficients& c, int n, RootSigns signs)
{
    check_n(n);
    if (c.a3_sq < 0.0)
        throw DomainError("nu_quantization: a3^2 < 0, solution does not decay as r -> infinity");
    const double A_sq = c.a3_sq + 2.0 * c.a2_sq + 4.0 * c.a1_sq;
    if (A_sq < 0.0)
        throw DomainError("nu_quantization: a3^2 + 2 a2^2 + 4 a1^2 < 0, A is not real");

    NUQuantization q;
    q.signs = signs;
    q.A = signs.A * std::sqrt(A_sq);
    q.a3 = signs.a3 * std::sqrt(c.a3_sq);

    const double base = -0.5 * (c.a2_sq + c.a3_sq);
    q.k1 = base - 0.5 * q.a3 * q.A;
    q.k2 = base + 0.5 * q.a3 * q.A;

    // pi(z) = a3 - (A + a3) z / 2, tau(z) = 2 + 2 a3 - (A + a3 + 2) z.
    q.tau_slope = -(q.A + q.a3 + 2.0);
    q.lambda = q.k1 - 0.5 * (q.A + q.a3);
    const double nn = static_cast<double>(n);
    q.lambda_n = -nn * q.tau_slope + nn * nn - nn;

    if (signs == RootSigns{} && !(q.tau_slope < 0.0))
        throw DomainError("nu_quantization: tau'(z) must be negative");
    return q;
}

NUQuantization nu_quantization(double energy, int n, int l, const SystemParams& p,
                               const PekerisCoefficients& d, RootSigns signs)
{
    return nu_quantization(spectral_coefficients(energy, l, p, d), n, signs);
}

double quantization_residual(double energy, int n, int l, const SystemParams& p,
                             const PekerisCoefficients& d, RootSigns signs)
{
    return nu_quantization(energy, n, l, p, d, signs).residual();
}

double principal_N(int n, double a1_sq)
{
    check_n(n);
    const double disc = 1.0 + 4.0 * a1_sq;
    if (disc < 0.0) throw DomainError("principal_N: 1 + 4 a1^2 < 0, N is not real");
    return -(2.0 * n + 1.0) + std::sqrt(disc);
}

double MassShift::value() const
{
    if (squared < 0.0) throw DomainError("m1-tilde radicand is negative");
    return std::sqrt(squared);
}

MassShift mass_shift_m1_tilde(int n, int l, const SystemParams& p, const PekerisCoefficients& d)
{
    const ClosedFormTerms t = closed_form_terms(l, p, d);
    const double M1 = p.mass_shift_energy();
    const double a1_sq = t.omega1_sq * t.L * t.d.D2 + t.omega2_sq * (M1 * M1 - t.V0 * t.V0);
    const double N = principal_N(n, a1_sq);
    const double Q = N * N + 4.0 * t.omega2_sq * t.V0 * t.V0;
    if (!(Q > 0.0)) throw NoBoundState("mass shift: N^2 + 4 omega2^2 V0^2 vanishes");

    const double Z = t.omega2_sq * M1 * (2.0 * t.M - M1);
    const double centrifugal = t.omega1_sq * (t.d.D1 + t.d.D2) * t.L;

    MassShift s;
    s.squared = Z * (2.0 * centrifugal - Z - 0.5 * Q) / (Q * Q);
    s.printed_squared = 8.0 * Z * (4.0 * centrifugal - 2.0 * Z - Q) / (Q * Q);
    return s;
}

double energy_closed_form(int n, int l, Branch branch, const SystemParams& p,
                          const PekerisCoefficients& d, MassShiftForm form)
{
    const ClosedFormTerms t = closed_form_terms(l, p, d);
    const double M1 = p.mass_shift_energy();
    const double a1_sq = t.omega1_sq * t.L * t.d.D2 + t.omega2_sq * (M1 * M1 - t.V0 * t.V0);

    double N = 0.0;
    try {
        N = principal_N(n, a1_sq);
    } catch (const DomainError& e) {
        throw NoBoundState(std::string("closed form ") + state_label(n, l) + ": " + e.what());
    }
    const double Q = N * N + 4.0 * t.omega2_sq * t.V0 * t.V0;
    if (!(Q > 0.0)) throw NoBoundState("closed form " + state_label(n, l) + ": vanishing denominator");

    const double Z = t.omega2_sq * M1 * (2.0 * t.M - M1);
    const double centrifugal = t.omega1_sq * (t.d.D1 + t.d.D2) * t.L;
    const MassShift shift = mass_shift_m1_tilde(n, l, p, d);
    const double m1_tilde_sq = form == MassShiftForm::consistent ? shift.squared : shift.printed_squared;

    const double first =
        -t.V0 * (4.0 * t.omega2_sq * t.V0 * t.V0 + N * N - 4.0 * centrifugal + 4.0 * Z) / (2.0 * Q);
    const double ratio = centrifugal / Q;
    const double radicand =
        (t.omega1_sq * (2.0 * t.d.D0 + t.d.D1 + t.d.D2) * t.L + 2.0 * t.M * t.M * t.omega2_sq) / (2.0 * Q) -
        ratio * ratio - 1.0 / 16.0 + m1_tilde_sq;
    if (radicand < 0.0)
        throw NoBoundState("closed form " + state_label(n, l) + ": negative radicand");

    const double energy = first + branch_sign(branch) * (N / std::sqrt(t.omega2_sq)) * std::sqrt(radicand);
    if (!(std::abs(energy) < t.M))
        throw NoBoundState("closed form " + state_label(n, l) + ": |E| = " + std::to_string(std::abs(energy)) +
                           " MeV is not below m0 c^2");
    return energy;
}

double energy_constant_mass(int n, int l, Branch branch, const SystemParams& p,
                            const PekerisCoefficients& d)
{
    const ClosedFormTerms t = closed_form_terms(l, p, d);
    const double a1_sq = t.omega1_sq * t.L * t.d.D2 + t.omega2_sq * (-t.V0 * t.V0);

    double N = 0.0;
    try {
        N = principal_N(n, a1_sq);
    } catch (const DomainError& e) {
        throw NoBoundState(std::string("constant-mass form ") + state_label(n, l) + ": " + e.what());
    }
    const double Q = N * N + 4.0 * t.omega2_sq * t.V0 * t.V0;
    if (!(Q > 0.0)) throw NoBoundState("constant-mass form " + state_label(n, l) + ": vanishing denominator");

    const double centrifugal = t.omega1_sq * (t.d.D1 + t.d.D2) * t.L;
    const double first = -t.V0 * (4.0 * t.omega2_sq * t.V0 * t.V0 + N * N - 4.0 * centrifugal) / (2.0 * Q);
    const double ratio = centrifugal / Q;
    const double radicand =
        (t.omega1_sq * (2.0 * t.d.D0 + t.d.D1 + t.d.D2) * t.L + 2.0 * t.M * t.M * t.omega2_sq) / (2.0 * Q) -
        ratio * ratio - 1.0 / 16.0;
    if (radicand < 0.0)
        throw NoBoundState("constant-mass form " + state_label(n, l) + ": negative radicand");

    const double energy = first + branch_sign(branch) * (N / std::sqrt(t.omega2_sq)) * std::sqrt(radicand);
    if (!(std::abs(energy) < t.M))
        throw NoBoundState("constant-mass form " + state_label(n, l) + ": |E| is not below m0 c^2");
    return energy;
}

double branch_midpoint(int n, int l, const SystemParams& p, const PekerisCoefficients& d)
{
    const ClosedFormTerms t = closed_form_terms(l, p, d);
    const double M1 = p.mass_shift_energy();
    const double a1_sq = t.omega1_sq * t.L * t.d.D2 + t.omega2_sq * (M1 * M1 - t.V0 * t.V0);
    const double N = principal_N(n, a1_sq);
    const double Q = N * N + 4.0 * t.omega2_sq * t.V0 * t.V0;
    const double Z = t.omega2_sq * M1 * (2.0 * t.M - M1);
    const double centrifugal = t.omega1_sq * (t.d.D1 + t.d.D2) * t.L;
    return -t.V0 * (4.0 * t.omega2_sq * t.V0 * t.V0 + N * N - 4.0 * centrifugal + 4.0 * Z) / (2.0 * Q);
}

namespace {

struct SignMatch {
    bool found = false;
    RootSigns signs;
    NUQuantization quant;
};

// The root-sign choice on which lambda(E) - lambda_n(E) is smallest.
SignMatch match_root_signs(const SpectralCoefficients& c, int n)
{
    SignMatch best;
    double best_abs = std::numeric_limits<double>::infinity();
    for (const RootSigns s : all_root_signs) {
        try {
            const NUQuantization q = nu_quantization(c, n, s);
            if (std::abs(q.residual()) < best_abs) {
                best_abs = std::abs(q.residual());
                best = {true, s, q};
            }
        } catch (const DomainError&) {
        }
    }
    return best;
}

} // namespace

BoundState solve_bound_state(int n, int l, Branch branch, const SystemParams& p,
                             const PekerisCoefficients& d)
{
    BoundState s;
    s.n = n;
    s.l = l;
    s.branch = branch;
    s.params = p;
    s.pekeris = d;
    s.energy = energy_closed_form(n, l, branch, p, d);
    s.coeffs = spectral_coefficients(s.energy, l, p, d);
    s.N = principal_N(n, s.coeffs.a1_sq);
    s.m1_tilde_sq = mass_shift_m1_tilde(n, l, p, d).squared;

    const SignMatch match = match_root_signs(s.coeffs, n);
    if (!match.found)
        throw NoBoundState("closed form " + state_label(n, l) + ": quantization undefined at E = " +
                           std::to_string(s.energy));
    if (match.signs.a3 < 0 && s.coeffs.a3_sq > 0.0)
        throw NoBoundState("closed form " + state_label(n, l) + " " + std::string(to_string(branch)) +
                           ": quantization holds only with a3 < 0 (grows as r -> infinity)");
    s.signs = match.signs;
    s.jacobi_a3 = match.quant.a3;
    s.jacobi_A = match.quant.A;
    s.residual = match.quant.residual();
    return s;
}

BoundState solve_bound_state(int n, int l, Branch branch, const SystemParams& p)
{
    return solve_bound_state(n, l, branch, p, pekeris_coefficients(p));
}

double symmetrized_quantization(double energy, int n, int l, const SystemParams& p,
                                const PekerisCoefficients& d)
{
    const SpectralCoefficients c = spectral_coefficients(energy, l, p, d);
    const double N = principal_N(n, c.a1_sq);
    const double lhs = N * N - 2.0 * c.a2_sq - 4.0 * c.a1_sq;
    return lhs * lhs - 4.0 * N * N * c.a3_sq;
}

RootSolution solve_energy_by_root(int n, int l, Branch branch, const SystemParams& p,
                                  const PekerisCoefficients& d)
{
    const std::string label = "root oracle " + state_label(n, l) + " " + std::string(to_string(branch));
    double N = 0.0;
    try {
        N = principal_N(n, spectral_coefficients(0.0, l, p, d).a1_sq);
    } catch (const DomainError& e) {
        throw NoBoundState(label + ": " + e.what());
    }
    if (N == 0.0) throw NoBoundState(label + ": N = 0, quantization is degenerate");

    const double M = p.rest_energy();
    const double eps = 1e-6 * M;
    const double lo = -M + eps;
    const double hi = M - eps;
    constexpr int intervals = 10000;

    auto G = [&](double e) { return symmetrized_quantization(e, n, l, p, d); };

    std::vector<double> roots;
    double e_prev = lo;
    double g_prev = G(lo);
    const double g_left = g_prev;
    for (int i = 1; i <= intervals; ++i) {
        const double e = lo + (hi - lo) * static_cast<double>(i) / intervals;
        const double g = G(e);
        if (g_prev * g < 0.0) {
            std::uintmax_t max_iter = 200;
            const auto bracket = boost::math::tools::toms748_solve(
                G, e_prev, e, g_prev, g, boost::math::tools::eps_tolerance<double>(52), max_iter);
            roots.push_back(0.5 * (bracket.first + bracket.second));
        }
        e_prev = e;
        g_prev = g;
    }
    if (roots.empty()) throw NoBoundState(label + ": no sign change of the quantization condition");
    if (roots.size() > 2) throw AmbiguousRoot(label + ": more than two roots", roots);

    // G is quadratic in E with positive leading coefficient: the particle
    // root sits on the side of the vertex given by sign(N).
    auto side_of = [&](std::size_t i) {
        if (roots.size() == 2) return i == 0 ? -1 : +1;
        return g_left < 0.0 ? +1 : -1;
    };
    const int wanted = branch_sign(branch) * (N > 0.0 ? +1 : -1);

    std::vector<double> picked;
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (side_of(i) == wanted) picked.push_back(roots[i]);
    if (picked.empty()) throw NoBoundState(label + ": no root on this branch inside (-m0c^2, m0c^2)");
    if (picked.size() > 1) throw AmbiguousRoot(label + ": several roots on one branch", picked);

    RootSolution out;
    out.energy = picked.front();
    out.candidates = roots;
    const SignMatch match = match_root_signs(spectral_coefficients(out.energy, l, p, d), n);
    if (!match.found) throw NoBoundState(label + ": quantization undefined at the root");
    if (match.signs.a3 < 0) throw NoBoundState(label + ": root requires a3 < 0");
    out.signs = match.signs;
    out.residual = match.quant.residual();
    return out;
}

} // namespace kgws
