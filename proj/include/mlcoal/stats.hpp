// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace mlcoal {

// Streaming first/second raw-moment accumulator; merge order does not change
// the result as long as the merge sequence itself is deterministic.
struct MomentAccumulator {
  std::int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const MomentAccumulator& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double variance() const {
    const double m = mean();
    double v = sum_sq / static_cast<double>(count) - m * m;
    return v > 0.0 ? v : 0.0;
  }
  double std_error() const { return std::sqrt(variance() / static_cast<double>(count)); }
};

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
// Takes copies and sorts them; ties across samples are handled.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Kolmogorov limiting survival function Q(lambda) = P(sup|B| > lambda),
// evaluated by the series appropriate to the argument's size.
double kolmogorov_survival(double lambda);

// Asymptotic two-sample p-value Q(sqrt(n m / (n + m)) * d).
double ks_pvalue(double d, std::size_t n, std::size_t m);

// Smallest d rejected at the given significance: Q^{-1}(significance) / sqrt(ne).
double ks_critical_value(double significance, std::size_t n, std::size_t m);

}  // namespace mlcoal
