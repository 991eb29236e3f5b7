// SPDX-License-Identifier: Apache-2.0
#include "mlcoal/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/digamma.hpp>

namespace mlcoal {

namespace {

void require_positive(double x, const char* fn) {
  if (!(x > 0.0))
    throw std::domain_error(std::string(fn) + ": argument must be positive, got " +
                            std::to_string(x));
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  return std::lgamma(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  return boost::math::digamma(x);
}

double log_ascending_factorial(double x, double m) {
  require_positive(x, "log_ascending_factorial");
  require_positive(x + m, "log_ascending_factorial (x + m)");
  if (m == 0.0) return 0.0;
  return std::lgamma(x + m) - std::lgamma(x);
}

double ascending_factorial(double x, double m) {
  return std::exp(log_ascending_factorial(x, m));
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0))
    throw std::domain_error("log_gamma(complex): Re z must be positive");
  // Shift into the region where the Stirling series converges fast, then
  // undo the shift with ln Gamma(z) = ln Gamma(z+k) - sum_j ln(z+j).
  // Principal logs are safe here: every shifted argument has Re > 0.
  std::complex<double> shift = 0.0;
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  // B_{2k} / (2k (2k-1)), k = 1..8.
  static constexpr double kStirling[] = {
      1.0 / 12.0,      -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,    -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0,
  };
  const std::complex<double> zinv = 1.0 / z;
  const std::complex<double> zinv2 = zinv * zinv;
  std::complex<double> series = 0.0;
  std::complex<double> power = zinv;  // z^{-(2k-1)}
  for (double c : kStirling) {
    series += c * power;
    power *= zinv2;
  }
  constexpr double kHalfLog2Pi = 0.91893853320467274178;  // ln(2*pi)/2
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series - shift;
}

double mean_turning_time() {
  // Psi(1 + e^{-t}) is positive at t=0 (Psi(2) > 0) and negative at t=5.
  double lo = 0.0, hi = 5.0;
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    if (digamma(1.0 + std::exp(-mid)) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mlcoal
