#pragma once

#include <cstdint>

namespace grushin::specialfn {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286061;

// Digamma psi(x) for x not a nonpositive integer, >= 12 significant digits.
// Upward recurrence pushes the argument above an internal threshold, then the
// Bernoulli asymptotic series applies; reflection handles x < 0.
double digamma(double x);

// H_n = sum_{m=1}^n 1/m. Compensated direct sum up to 10^6, digamma beyond.
double harmonic(long long n);

// Generalized Laguerre L_n^alpha(x) by the three-term recurrence in n.
double laguerre(int n, double alpha, double x);

// W_{n,1/2}(z) for integer n >= 1 via the Laguerre reduction
// z e^{-z/2} L_{n-1}^1(z); the only Whittaker regime the closed forms need.
double whittaker_w_half(int n, double z);

// Bessel J_nu, nu in {0,1}, x >= 0. Power series in long double up to
// bessel_series_cutoff, Hankel asymptotic expansion beyond it.
inline constexpr double bessel_series_cutoff = 16.0;
double bessel_j(int nu, double x);

// Terminating Gauss hypergeometric F(-m, b; c; z), an exact degree-m
// polynomial. Throws usage_error when c is a nonpositive integer.
double hypergeom_terminating(int m, double b, double c, double z);

// Pochhammer (a)_l with overflow check.
double pochhammer(double a, int l);

// d(m), number of positive divisors, trial division up to sqrt(m).
long long divisor_count(long long m);

} // namespace grushin::specialfn
