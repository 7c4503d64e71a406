#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/jacobi.hpp>
#include <cmath>

#include "kgws/errors.hpp"
#include "kgws/nu_spectrum.hpp"
#include "kgws/special_functions.hpp"

using namespace kgws;

TEST_CASE("low-order Jacobi polynomials")
{
    for (double a : {-0.5, 0.0, 1.3, 6.1})
        for (double b : {-0.7, 0.0, 2.0, -6.1})
            for (double x : {-1.0, -0.2, 0.4, 1.0}) {
                CHECK(jacobi_polynomial(0, a, b, x) == 1.0);
                CHECK(jacobi_polynomial(1, a, b, x) == doctest::Approx((a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0));
            }
    CHECK(jacobi_polynomial(2, 0.0, 0.0, 0.0) == doctest::Approx(-0.5));
    CHECK(jacobi_polynomial_sum(2, 0.0, 0.0, 0.0) == doctest::Approx(-0.5));
    CHECK(jacobi_polynomial(3, 0.0, 0.0, 0.3) == doctest::Approx(0.5 * (5.0 * 0.027 - 0.9)));
    CHECK_THROWS_AS(jacobi_polynomial(-1, 0.0, 0.0, 0.0), DomainError);
}

TEST_CASE("recurrence matches Boost for regular parameters")
{
    for (int n = 0; n <= 8; ++n)
        for (double a : {0.0, 0.5, 3.7})
            for (double b : {0.0, 1.5, 4.2})
                for (double x : {-0.9, 0.0, 0.6}) {
                    const double ref = boost::math::jacobi(static_cast<unsigned>(n), a, b, x);
                    CHECK(jacobi_polynomial(n, a, b, x) == doctest::Approx(ref).epsilon(1e-12));
                }
}

TEST_CASE("recurrence and explicit sum agree on bound-state parameters")
{
    for (double m1 : {0.0, 0.001, 0.01}) {
        const SystemParams p = reference_system(m1);
        const PekerisCoefficients d = pekeris_coefficients(p);
        for (int n = 0; n <= 2; ++n)
            for (int l = 0; l <= 2; ++l)
                for (Branch br : {Branch::particle, Branch::antiparticle}) {
                    BoundState s;
                    try {
                        s = solve_bound_state(n, l, br, p, d);
                    } catch (const NoBoundState&) {
                        continue;
                    }
                    for (int k = 0; k <= 5; ++k)
                        for (double x : {-0.99, -0.5, 0.0, 0.5, 0.99}) {
                            const double r = jacobi_polynomial(k, s.jacobi_a3, s.jacobi_A, x);
                            const double sum = jacobi_polynomial_sum(k, s.jacobi_a3, s.jacobi_A, x);
                            CHECK(std::abs(r - sum) <= 1e-10 * std::max(1.0, std::abs(sum)));
                        }
                }
    }
}

TEST_CASE("degenerate recurrence denominators fall back to the sum")
{
    // alpha + beta = -2 makes 2k + alpha + beta vanish at k = 1.
    const double v = jacobi_polynomial(3, 0.5, -2.5, 0.3);
    CHECK(std::isfinite(v));
    CHECK(v == doctest::Approx(jacobi_polynomial_sum(3, 0.5, -2.5, 0.3)));
}

TEST_CASE("derivatives")
{
    const double a = 1.3, b = -0.4, x = 0.35, h = 1e-5;
    for (int n = 1; n <= 5; ++n) {
        const double fd = (jacobi_polynomial(n, a, b, x + h) - jacobi_polynomial(n, a, b, x - h)) / (2.0 * h);
        CHECK(jacobi_polynomial_derivative(n, a, b, x) == doctest::Approx(fd).epsilon(1e-8));
        const double fd2 = (jacobi_polynomial(n, a, b, x + h) - 2.0 * jacobi_polynomial(n, a, b, x) +
                            jacobi_polynomial(n, a, b, x - h)) / (h * h);
        CHECK(jacobi_polynomial_derivative(n, a, b, x, 2) == doctest::Approx(fd2).epsilon(1e-5));
    }
    CHECK(jacobi_polynomial_derivative(2, a, b, x, 3) == 0.0);
}

TEST_CASE("hypergeometric series")
{
    // 2F1(a, b; b; z) = (1 - z)^-a
    for (double a : {-3.2, 0.5, 2.0})
        for (double z : {-0.7, 0.2, 0.5, 0.9})
            CHECK(hypergeometric_2f1(a, 1.7, 1.7, z) == doctest::Approx(std::pow(1.0 - z, -a)).epsilon(1e-12));
    // 2F1(1, 1; 2; z) = -ln(1 - z)/z
    CHECK(hypergeometric_2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-13));
    // terminating series
    CHECK(hypergeometric_2f1(-2.0, 3.0, 4.0, 0.5) == doctest::Approx(1.0 - 0.75 + 0.15).epsilon(1e-14));
    CHECK_THROWS_AS(hypergeometric_2f1(1.0, 1.0, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(hypergeometric_2f1(1.0, 1.0, -2.0, 0.5), DomainError);
}

TEST_CASE("Euler integral agrees with the series")
{
    for (double a : {-5.1, -1.0, 0.3, 4.4})
        for (double b : {0.5, 6.0, 8.2})
            for (double z : {-0.5, 0.5, 0.8})
                CHECK(hypergeometric_2f1_euler(a, b, b + 1.0, z) ==
                      doctest::Approx(hypergeometric_2f1(a, b, b + 1.0, z)).epsilon(1e-10));
    CHECK(hypergeometric_2f1_euler(2.0, 1.5, 1.5 + 1.0, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(hypergeometric_2f1_euler(1.0, 2.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(hypergeometric_2f1_euler(1.0, 1.0, 2.0, 1.0), DomainError);
}
