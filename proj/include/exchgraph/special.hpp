#pragma once

#include <cmath>

namespace exchgraph::special {

double log_binomial(double n, double k);
double log_factorial(double k);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// log of Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt for any real a and x > 0.
/// Evaluated by adaptive quadrature, so negative non-integer a is fine.
double log_upper_gamma(double a, double x);

/// Hurwitz zeta(s, a) = sum_{k>=0} (a+k)^{-s}, s > 1, a > 0.
double hurwitz_zeta(double s, double a);

/// x log x with the continuous extension 0 log 0 = 0.
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace exchgraph::special
