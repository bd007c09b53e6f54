#pragma once

#include "fracdiff/types.hpp"

namespace fracdiff {

// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);
long double sin_pi(long double x);

// 1/Gamma(z); exactly zero at z = 0, -1, -2, ...
double reciprocal_gamma(double z);
long double reciprocal_gamma(long double z);

// Wright function W_{alpha,beta}(x) = sum_k x^k / (k! Gamma(alpha k + beta)),
// alpha > -1.  Summed in extended precision.  abs_err covers the truncated
// tail and the round-off accumulated across the terms.
EvalResult wright(double alpha, double beta, double x, const SeriesControl& ctl = {});

// One-parameter Mittag-Leffler function E_nu(z) = sum_k z^k / Gamma(nu k + 1).
// On the negative axis the series is abandoned once cancellation sets in and
// the Laplace-type integral representation takes over (0 < nu < 2, nu != 1).
EvalResult mittag_leffler(double nu, double z, const SeriesControl& ctl = {});

// Airy function Ai on the real line.
EvalResult airy_ai(double w);

// Modified Bessel K_{1/4}(x), x > 0.
EvalResult bessel_k_quarter(double x);

// Modified Bessel I_nu(x) by its power series (x >= 0, moderate x).
double bessel_i_series(double nu, double x);

// K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du, evaluated with the
// trapezoidal rule (the integrand is entire and decays double-exponentially).
double bessel_k_integral(double nu, double x);

}  // namespace fracdiff
