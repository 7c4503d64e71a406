#include "kgws/special_functions.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "kgws/errors.hpp"

namespace kgws {

namespace {

double rising(double x, int k)
{
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x + i;
    return r;
}

bool near_zero(double v)
{
    return std::abs(v) < 1e-12;
}

} // namespace

double jacobi_polynomial_sum(int n, double alpha, double beta, double x)
{
    if (n < 0) throw DomainError("jacobi_polynomial_sum: degree must be non-negative");
    // Gamma ratios written as rising factorials so that no pole is ever evaluated.
    const double y = 0.5 * (x - 1.0);
    double sum = 0.0;
    double binom = 1.0;
    double y_pow = 1.0;
    for (int m = 0; m <= n; ++m) {
        sum += binom * rising(alpha + m + 1.0, n - m) * rising(alpha + beta + n + 1.0, m) * y_pow;
        binom = binom * (n - m) / (m + 1.0);
        y_pow *= y;
    }
    double factorial = 1.0;
    for (int i = 2; i <= n; ++i) factorial *= i;
    return sum / factorial;
}

double jacobi_polynomial(int n, double alpha, double beta, double x)
{
    if (n < 0) throw DomainError("jacobi_polynomial: degree must be non-negative");
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("jacobi_polynomial: parameters must be finite");
    if (n == 0) return 1.0;

    double p_prev = 1.0;
    double p = (alpha + 1.0) + 0.5 * (alpha + beta + 2.0) * (x - 1.0);
    const double ab = alpha + beta;
    for (int k = 1; k < n; ++k) {
        const double two_k_ab = 2.0 * k + ab;
        const double denom = 2.0 * (k + 1.0) * (k + ab + 1.0) * two_k_ab;
        if (near_zero(two_k_ab) || near_zero(k + ab + 1.0))
            return jacobi_polynomial_sum(n, alpha, beta, x);
        const double c1 = (two_k_ab + 1.0) * ((two_k_ab + 2.0) * two_k_ab * x + alpha * alpha - beta * beta);
        const double c2 = 2.0 * (k + alpha) * (k + beta) * (two_k_ab + 2.0);
        const double next = (c1 * p - c2 * p_prev) / denom;
        p_prev = p;
        p = next;
    }
    return p;
}

double jacobi_polynomial_derivative(int n, double alpha, double beta, double x, int k)
{
    if (k < 0) throw DomainError("jacobi_polynomial_derivative: order must be non-negative");
    if (k > n) return 0.0;
    const double scale = rising(alpha + beta + n + 1.0, k) / std::ldexp(1.0, k);
    return scale * jacobi_polynomial(n - k, alpha + k, beta + k, x);
}

double hypergeometric_2f1(double a, double b, double c, double z)
{
    if (!(std::abs(z) < 1.0)) throw DomainError("hypergeometric_2f1: series requires |z| < 1");
    if (c <= 0.0 && c == std::floor(c)) throw DomainError("hypergeometric_2f1: c is a non-positive integer");

    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < 100000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if (term == 0.0 || std::abs(term) < 1e-17 * std::abs(sum)) return sum;
    }
    throw DomainError("hypergeometric_2f1: series did not converge");
}

double hypergeometric_2f1_euler(double a, double b, double c, double z)
{
    if (!(c > b && b > 0.0)) throw DomainError("hypergeometric_2f1_euler: requires c > b > 0");
    if (!(z < 1.0)) throw DomainError("hypergeometric_2f1_euler: requires z < 1");

    auto integrand = [&](double t, double tc) {
        // For t > 1/2 tanh_sinh passes tc = 1 - t without cancellation.
        const double one_minus_t = t < 0.5 ? 1.0 - t : tc;
        return std::pow(t, b - 1.0) * std::pow(one_minus_t, c - b - 1.0) * std::pow(1.0 - t * z, -a);
    };
    boost::math::quadrature::tanh_sinh<double> integrator;
    const double integral = integrator.integrate(integrand, 0.0, 1.0);
    const double log_pre = std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b);
    return std::exp(log_pre) * integral;
}

} // namespace kgws
