#include "kgws/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "kgws/errors.hpp"
#include "kgws/special_functions.hpp"

namespace kgws {

namespace {

// z and w = 2 - z at x = r - r0, without cancellation in either.
struct ZPair {
    double z;
    double w;
};

ZPair z_pair(double x, const SystemParams& p)
{
    const double e = p.q * std::exp(p.beta() * x);
    if (e > 1.0) return {2.0 / (1.0 + e), 2.0 / (1.0 + 1.0 / e)};
    return {2.0 / (1.0 + e), 2.0 * e / (1.0 + e)};
}

double phi_from_pair(const ZPair& zp, int n, double a3, double A)
{
    if (zp.z == 0.0) return 0.0;
    return std::pow(zp.w, 0.5 * A) * std::pow(zp.z, 0.5 * a3) * jacobi_polynomial(n, a3, A, 1.0 - zp.z);
}

double phi_unnormalized_at_r(double r, const BoundState& s)
{
    return phi_from_pair(z_pair(r - s.params.r0, s.params), s.n, s.jacobi_a3, s.jacobi_A);
}

// int f over [a, b] with 31-point Gauss-Kronrod; b may be +inf.
double adaptive(const auto& f, double a, double b, double& error)
{
    double err = 0.0;
    const double value =
        boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, 1e-12, &err);
    error += err;
    return value;
}

} // namespace

double weight_function(double z, double a3, double A)
{
    if (!(z > 0.0 && z < 2.0)) throw DomainError("weight_function: z must lie in (0, 2)");
    return std::pow(z, a3) * std::pow(2.0 - z, A);
}

double eigenfunction_unnormalized(double z, const BoundState& state)
{
    const double zmax = z_max(state.params);
    if (!(z > 0.0 && z <= zmax * (1.0 + 1e-14)))
        throw DomainError("eigenfunction_unnormalized: z outside the physical range (0, z_max]");
    return phi_from_pair({z, 2.0 - z}, state.n, state.jacobi_a3, state.jacobi_A);
}

double Eigenfunction::operator()(double r) const
{
    return norm_constant * phi_unnormalized_at_r(r, state);
}

PhiJet Eigenfunction::jet(double r) const
{
    const SystemParams& p = state.params;
    const ZPair zp = z_pair(r - p.r0, p);
    if (zp.z == 0.0) return {};

    const double beta = p.beta();
    const double z_x = -0.5 * beta * zp.z * zp.w;
    const double z_xx = -0.5 * beta * (zp.w - zp.z) * z_x;

    // g = z^(a3/2) w^(A/2); its logarithmic x-derivative is polynomial in z.
    const double g = norm_constant * std::pow(zp.w, 0.5 * A) * std::pow(zp.z, 0.5 * a3);
    const double log_g_x = -0.25 * beta * (a3 * zp.w - A * zp.z);
    const double log_g_xx = 0.25 * beta * (a3 + A) * z_x;
    const double g_x = g * log_g_x;
    const double g_xx = g * (log_g_x * log_g_x + log_g_xx);

    const int n = state.n;
    const double t = 1.0 - zp.z;
    const double P = jacobi_polynomial(n, a3, A, t);
    const double dP = jacobi_polynomial_derivative(n, a3, A, t, 1);
    const double ddP = jacobi_polynomial_derivative(n, a3, A, t, 2);
    const double p_x = -dP * z_x;
    const double p_xx = ddP * z_x * z_x - dP * z_xx;

    return {g * P, g_x * P + g * p_x, g_xx * P + 2.0 * g_x * p_x + g * p_xx};
}

Eigenfunction normalize(const BoundState& state, const RadialGrid& grid)
{
    (void)grid;
    return normalize(state);
}

Eigenfunction normalize(const BoundState& state)
{
    const SystemParams& p = state.params;
    Eigenfunction phi;
    phi.state = state;
    phi.a3 = state.jacobi_a3;
    phi.A = state.jacobi_A;
    phi.z_max = z_max(p);

    auto density = [&](double r) {
        const double v = phi_unnormalized_at_r(r, state);
        return v * v;
    };

    // z = 1 at r = r0 - ln(q)/beta.
    const double r_split = std::clamp(p.r0 - std::log(p.q) / p.beta(), 0.0, p.r0);
    double error = 0.0;
    const double inner = r_split > 0.0 ? adaptive(density, 0.0, r_split, error) : 0.0;
    const double middle = r_split < p.r0 ? adaptive(density, r_split, p.r0, error) : 0.0;
    const double outer = adaptive(density, p.r0, std::numeric_limits<double>::infinity(), error);
    const double total = inner + middle + outer;

    if (!(total > 0.0) || !std::isfinite(total))
        throw QuadratureFailure("normalize: norm integral is not positive and finite");
    if (error > std::max(1e-12, 1e-10 * total))
        throw QuadratureFailure("normalize: quadrature error estimate exceeds tolerance");

    phi.norm_constant = 1.0 / std::sqrt(total);
    phi.report.integral = total;
    phi.report.error_estimate = error;
    phi.report.fraction_beyond_z1 = inner / total;

    // Independent re-integration of the normalized density.
    auto normalized = [&](double r) {
        const double v = phi(r);
        return v * v;
    };
    double err61 = 0.0;
    phi.report.norm =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(normalized, 0.0, p.r0, 20, 1e-12, &err61) +
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            normalized, p.r0, std::numeric_limits<double>::infinity(), 20, 1e-12, &err61);

    auto alt_integrand = [&](double z) {
        const double v = phi_from_pair({z, 2.0 - z}, state.n, phi.a3, phi.A);
        return v * v * (z - 2.0) / z;
    };
    boost::math::quadrature::tanh_sinh<double> ts;
    phi.report.alt_measure_integral = 0.25 * p.beta() * ts.integrate(alt_integrand, 0.0, 1.0);
    return phi;
}

double norm_constant_on_grid(const BoundState& state, const RadialGrid& grid)
{
    const std::vector<double> w = grid.simpson_weights();
    double sum = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const double v = phi_unnormalized_at_r(grid.r(i), state);
        sum += w[i] * v * v;
    }
    return 1.0 / std::sqrt(sum);
}

double norm_constant_fixed_gauss(const BoundState& state, double r_max, int panels)
{
    auto density = [&](double r) {
        const double v = phi_unnormalized_at_r(r, state);
        return v * v;
    };
    const double h = r_max / panels;
    double sum = 0.0;
    for (int k = 0; k < panels; ++k)
        sum += boost::math::quadrature::gauss<double, 20>::integrate(density, k * h, (k + 1) * h);
    return 1.0 / std::sqrt(sum);
}

int count_nodes(const Eigenfunction& phi, int samples)
{
    // The weight z^(a3/2) (2-z)^(A/2) is positive, so phi changes sign
    // exactly where the Jacobi factor does.
    int nodes = 0;
    double prev = 0.0;
    for (int k = 1; k < samples; ++k) {
        const double z = phi.z_max * static_cast<double>(k) / samples;
        const double v = jacobi_polynomial(phi.state.n, phi.a3, phi.A, 1.0 - z);
        if (v == 0.0) continue;
        if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++nodes;
        prev = v;
    }
    return nodes;
}

ClosedFormNormDiagnostic closed_form_norm_diagnostic(const Eigenfunction& phi)
{
    const int n = phi.state.n;
    const double a3 = phi.a3;
    const double A = phi.A;
    const double beta = phi.state.params.beta();

    // P_n^(a3, A)(1 - z) = sum_m g[m] z^m.
    std::vector<double> g(n + 1);
    {
        double factorial = 1.0;
        for (int i = 2; i <= n; ++i) factorial *= i;
        double binom = 1.0;
        for (int m = 0; m <= n; ++m) {
            double rise_a = 1.0;
            for (int i = 0; i < n - m; ++i) rise_a *= a3 + m + 1.0 + i;
            double rise_ab = 1.0;
            for (int i = 0; i < m; ++i) rise_ab *= a3 + A + n + 1.0 + i;
            g[m] = binom * rise_a * rise_ab * std::pow(-0.5, m) / factorial;
            binom = binom * (n - m) / (m + 1.0);
        }
    }

    ClosedFormNormDiagnostic out;
    out.quadrature_b = phi.norm_constant;
    const double special_value =
        std::sqrt(std::numbers::pi) * std::tgamma(A + 3.0) / std::tgamma(A + 2.5);

    double sum_exact = 0.0;
    double sum_closed = 0.0;
    for (int m = 0; m <= n; ++m) {
        for (int s = 0; s <= n; ++s) {
            const double b = m + s + a3;
            const double exact = std::pow(2.0, A + 1.0) / b * hypergeometric_2f1(-A - 1.0, b, b + 1.0, 0.5);
            const double closed = special_value / (2.0 * b);
            sum_exact += g[m] * g[s] * exact;
            sum_closed += g[m] * g[s] * closed;
            const bool held = std::abs(b - A - 2.0) < 1e-9;
            out.condition_held.push_back(held);
            out.terms += 1;
            out.terms_condition_held += held ? 1 : 0;
        }
    }
    sum_exact *= 0.25 * beta;
    sum_closed *= 0.25 * beta;
    out.b_sq_exact_terms = 1.0 / sum_exact;
    out.b_sq_closed_form = 1.0 / sum_closed;

    const double nan = std::numeric_limits<double>::quiet_NaN();
    out.ratio_exact_terms = out.b_sq_exact_terms > 0.0 ? std::sqrt(out.b_sq_exact_terms) / out.quadrature_b : nan;
    out.ratio_closed_form = out.b_sq_closed_form > 0.0 ? std::sqrt(out.b_sq_closed_form) / out.quadrature_b : nan;

    std::ostringstream status;
    status << "side condition m+s+a3-A=2 held for " << out.terms_condition_held << " of " << out.terms
           << " terms";
    if (out.terms_condition_held != out.terms) status << "; special-value closed form not applicable";
    if (!std::isfinite(special_value)) status << "; Gamma(A+3)/Gamma(A+5/2) undefined";
    out.status = status.str();
    return out;
}

std::vector<std::pair<double, double>> sample_on_r_grid(const Eigenfunction& phi, const RadialGrid& grid)
{
    std::vector<std::pair<double, double>> out;
    out.reserve(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const double r = grid.r(i);
        out.emplace_back(r, phi(r));
    }
    return out;
}

} // namespace kgws
