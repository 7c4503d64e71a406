#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kgws/errors.hpp"
#include "kgws/wavefunction.hpp"

using namespace kgws;

namespace {

BoundState ground(double m1 = 0.0)
{
    return solve_bound_state(0, 0, Branch::particle, reference_system(m1));
}

} // namespace

TEST_CASE("weight function")
{
    CHECK(weight_function(1.0, 3.3, -6.0) == 1.0);
    CHECK(weight_function(0.4, 0.0, 0.0) == 1.0);
    CHECK(weight_function(0.5, 1.0, 2.0) == doctest::Approx(1.125));
    CHECK_THROWS_AS(weight_function(0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(weight_function(2.0, 1.0, 1.0), DomainError);
}

TEST_CASE("unnormalized eigenfunction")
{
    const BoundState s = ground();
    const double z = 0.7;
    CHECK(eigenfunction_unnormalized(z, s) ==
          doctest::Approx(std::pow(2.0 - z, s.jacobi_A / 2.0) * std::pow(z, s.jacobi_a3 / 2.0)));
    CHECK(std::abs(eigenfunction_unnormalized(1e-12, s)) < 1e-30);
    CHECK_THROWS_AS(eigenfunction_unnormalized(0.0, s), DomainError);
    CHECK_THROWS_AS(eigenfunction_unnormalized(z_max(s.params) * 1.001, s), DomainError);
}

TEST_CASE("vanishing exponent near z = 0")
{
    const BoundState s = ground(0.001);
    const double z1 = 1e-6, z2 = 1e-5;
    const double slope =
        std::log(std::abs(eigenfunction_unnormalized(z2, s) / eigenfunction_unnormalized(z1, s))) / std::log(z2 / z1);
    CHECK(slope == doctest::Approx(s.jacobi_a3 / 2.0).epsilon(0.01));
}

TEST_CASE("normalization")
{
    const BoundState s = ground();
    const Eigenfunction phi = normalize(s);
    CHECK(phi.report.norm == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(phi.norm_constant == doctest::Approx(2.68345811612221e-10).epsilon(1e-8));
    CHECK(phi.report.error_estimate <= 1e-10 * phi.report.integral);
    CHECK(phi.report.fraction_beyond_z1 >= 0.0);
    CHECK(phi.report.fraction_beyond_z1 <= 1.0);
    CHECK(phi.z_max == doctest::Approx(z_max(s.params)));
}

TEST_CASE("independent quadratures agree")
{
    for (double m1 : {0.0, 0.001, 0.01}) {
        const BoundState s = ground(m1);
        const Eigenfunction phi = normalize(s);
        const double r_max = s.params.r0 + 25.0 * s.params.a;
        CHECK(norm_constant_fixed_gauss(s, r_max) == doctest::Approx(phi.norm_constant).epsilon(1e-8));
        const RadialGrid g = RadialGrid::for_system(s.params, 8001);
        const double b1 = norm_constant_on_grid(s, g);
        const double b2 = norm_constant_on_grid(s, g.refined());
        CHECK(std::abs(b1 / b2 - 1.0) < 1e-8);
        CHECK(b2 == doctest::Approx(phi.norm_constant).epsilon(1e-8));
    }
}

TEST_CASE("alternative measure equals the term-by-term hypergeometric sum")
{
    const Eigenfunction phi = normalize(ground(0.001));
    const ClosedFormNormDiagnostic diag = closed_form_norm_diagnostic(phi);
    CHECK(phi.report.alt_measure_integral < 0.0);
    CHECK(-phi.report.alt_measure_integral == doctest::Approx(1.0 / diag.b_sq_exact_terms).epsilon(1e-9));
}

TEST_CASE("closed-form normalization diagnostic bookkeeping")
{
    const Eigenfunction phi = normalize(ground());
    const ClosedFormNormDiagnostic diag = closed_form_norm_diagnostic(phi);
    CHECK(diag.terms == 1);
    CHECK(diag.condition_held.size() == 1);
    CHECK(diag.terms_condition_held == 0);
    CHECK(diag.quadrature_b == phi.norm_constant);
    CHECK(std::isfinite(diag.ratio_exact_terms));
    CHECK(diag.status.find("0 of 1") != std::string::npos);
}

TEST_CASE("analytic derivatives match finite differences")
{
    const Eigenfunction phi = normalize(ground(0.01));
    const double h = 1e-4;
    for (double r : {0.5, 3.0, 4.9, 6.5, 9.0}) {
        const PhiJet j = phi.jet(r);
        CHECK(j.value == doctest::Approx(phi(r)).epsilon(1e-13));
        CHECK(j.d1 == doctest::Approx((phi(r + h) - phi(r - h)) / (2.0 * h)).epsilon(1e-6));
        CHECK(j.d2 == doctest::Approx((phi(r + h) - 2.0 * phi(r) + phi(r - h)) / (h * h)).epsilon(1e-4));
    }
}

TEST_CASE("samples on the radial grid")
{
    const BoundState s = ground();
    const Eigenfunction phi = normalize(s);
    const RadialGrid g(0.0, s.params.r0 * 2.0, 1001);
    const auto samples = sample_on_r_grid(phi, g);
    CHECK(samples.size() == 1001u);
    for (std::size_t i = 1; i < samples.size(); ++i) CHECK(samples[i].first > samples[i - 1].first);
    const double z0 = 2.0 / (1.0 + s.params.q);
    CHECK(samples[500].first == doctest::Approx(s.params.r0));
    CHECK(samples[500].second == doctest::Approx(phi.norm_constant * eigenfunction_unnormalized(z0, s)));

    const RadialGrid wide = RadialGrid::for_system(s.params);
    const auto all = sample_on_r_grid(phi, wide);
    double peak = 0.0;
    for (const auto& [r, v] : all) peak = std::max(peak, std::abs(v));
    CHECK(std::abs(all.back().second) < 1e-8 * peak);
}

TEST_CASE("node count of the ground states")
{
    for (double m1 : {0.0, 0.001, 0.01})
        for (int l = 0; l <= 2; ++l) {
            const Eigenfunction phi = normalize(solve_bound_state(0, l, Branch::particle, reference_system(m1)));
            CHECK(count_nodes(phi) == 0);
        }
}

TEST_CASE("node count follows the polynomial degree when the roots lie inside")
{
    // A state with regular Jacobi parameters built by hand: P_2^(1,1) has
    // both zeros inside (-1, 1), i.e. inside z in (0, 2).
    Eigenfunction phi;
    phi.state.n = 2;
    phi.a3 = 1.0;
    phi.A = 1.0;
    phi.z_max = 1.999;
    CHECK(count_nodes(phi) == 2);
    phi.state.n = 3;
    CHECK(count_nodes(phi) == 3);
}
