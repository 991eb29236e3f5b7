// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

namespace mlcoal {

// ln Gamma(x) for x > 0.
double log_gamma(double x);

// Psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

// ln [x]_m where [x]_m = Gamma(x+m)/Gamma(x) is the ascending factorial,
// x > 0, x + m > 0. Real (not necessarily integer) m is allowed.
double log_ascending_factorial(double x, double m);

// [x]_m = exp(log_ascending_factorial); for integer m equals x(x+1)...(x+m-1).
double ascending_factorial(double x, double m);

// Principal-branch ln Gamma(z) on the right half plane Re z > 0.
// Continuous in z; imaginary part is not reduced mod 2*pi.
std::complex<double> log_gamma(std::complex<double> z);

// The unique t0 > 0 with Psi(1 + e^{-t0}) = 0: the time at which the mean of
// the limiting process stops rising and starts falling. Bisection on [0, 5]
// to absolute tolerance 1e-9.
double mean_turning_time();

}  // namespace mlcoal
