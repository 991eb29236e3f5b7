// SPDX-License-Identifier: Apache-2.0
#include "mlcoal/stats.hpp"

#include <algorithm>
#include <stdexcept>

namespace mlcoal {

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_statistic: samples must be nonempty");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // 1 - (sqrt(2 pi)/lambda) sum_{k odd} exp(-k^2 pi^2 / (8 lambda^2))
    const double u = M_PI * M_PI / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 7; k += 2) cdf += std::exp(-u * k * k);
    cdf *= std::sqrt(2.0 * M_PI) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double ks_pvalue(double d, std::size_t n, std::size_t m) {
  const double ne = static_cast<double>(n) * static_cast<double>(m) /
                    static_cast<double>(n + m);
  return kolmogorov_survival(std::sqrt(ne) * d);
}

double ks_critical_value(double significance, std::size_t n, std::size_t m) {
  if (!(significance > 0.0 && significance < 1.0))
    throw std::invalid_argument("ks_critical_value: significance must be in (0,1)");
  double lo = 1e-4, hi = 10.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_survival(mid) > significance)
      lo = mid;
    else
      hi = mid;
  }
  const double ne = static_cast<double>(n) * static_cast<double>(m) /
                    static_cast<double>(n + m);
  return 0.5 * (lo + hi) / std::sqrt(ne);
}

}  // namespace mlcoal
