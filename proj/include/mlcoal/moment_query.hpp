// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mlcoal {

// A joint-moment request at times 0 <= t_1 < t_2 < ... < t_k with real
// exponents m_j >= 0, together with the derived weights
//   x_j = sum_{i > j} m_i e^{-(t_i - t_j)},  j = 0..k  (t_0 := 0),
// computed by the stable backward recurrence x_{j-1} = (x_j + m_j) e^{-dt_j}.
// Note x_k = 0 always; the x_j need not be monotone in j.
struct MomentQuery {
  std::vector<double> times;
  std::vector<double> exponents;

  MomentQuery(std::vector<double> t, std::vector<double> m)
      : times(std::move(t)), exponents(std::move(m)) {
    if (times.empty() || times.size() != exponents.size())
      throw std::invalid_argument("MomentQuery: need equal, nonzero numbers of times and exponents");
    if (!(times.front() >= 0.0))
      throw std::invalid_argument("MomentQuery: times must be >= 0");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1]))
        throw std::invalid_argument("MomentQuery: times must be strictly increasing");
    for (double m : exponents)
      if (!(m >= 0.0)) throw std::invalid_argument("MomentQuery: exponents must be >= 0");
    weights_.assign(times.size() + 1, 0.0);
    for (std::size_t j = times.size(); j >= 1; --j) {
      const double tprev = (j >= 2) ? times[j - 2] : 0.0;
      weights_[j - 1] = (weights_[j] + exponents[j - 1]) * std::exp(-(times[j - 1] - tprev));
    }
  }

  std::size_t size() const { return times.size(); }

  // x_0 .. x_k (size k+1).
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t j) const { return weights_.at(j); }

 private:
  std::vector<double> weights_;
};

}  // namespace mlcoal
