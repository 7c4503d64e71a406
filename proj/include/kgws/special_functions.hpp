#pragma once

namespace kgws {

/// P_n^{(alpha, beta)}(x) by the three-term recurrence.
///
/// The recurrence is used for any finite parameters, including alpha or beta
/// below -1 where the family stops being orthogonal but the polynomials are
/// still well defined. Falls back to the explicit sum where a recurrence denominator vanishes.
double jacobi_polynomial(int n, double alpha, double beta, double x);

/// Same polynomial from the explicit gamma-function sum
///   Gamma(a+n+1)/(n! Gamma(a+b+n+1)) sum_m C(n,m) Gamma(a+b+n+m+1)/Gamma(a+m+1) ((x-1)/2)^m.
/// Intended as a cross-check for small n.
double jacobi_polynomial_sum(int n, double alpha, double beta, double x);

/// k-th derivative in x of P_n^{(alpha, beta)}.
double jacobi_polynomial_derivative(int n, double alpha, double beta, double x, int k = 1);

/// 2F1(a, b; c; z) by its power series, |z| < 1, c not a non-positive integer.
double hypergeometric_2f1(double a, double b, double c, double z);

/// 2F1 from the Euler integral
///   Gamma(c)/(Gamma(b) Gamma(c-b)) int_0^1 t^(b-1) (1-t)^(c-b-1) (1-tz)^(-a) dt,
/// valid for c > b > 0 and z < 1.
double hypergeometric_2f1_euler(double a, double b, double c, double z);

} // namespace kgws
