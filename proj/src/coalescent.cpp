// SPDX-License-Identifier: Apache-2.0
#include "mlcoal/coalescent.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "mlcoal/specfun.hpp"

namespace mlcoal {

void CoalescentSpec::validate() const {
  if (n < 1) throw std::invalid_argument("CoalescentSpec: n must be >= 1");
}

double generator_entry(int i, int j) {
  if (i < 1 || j < 1) throw std::invalid_argument("generator_entry: states must be >= 1");
  if (i == j) return 1.0 - i;
  if (j > i) return 0.0;
  const double d = i - j;
  return i / (d * (d + 1.0));
}

Eigen::MatrixXd generator_matrix(int n) {
  if (n < 1) throw std::invalid_argument("generator_matrix: n must be >= 1");
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j) q(i - 1, j - 1) = generator_entry(i, j);
  return q;
}

Eigen::VectorXd jump_distribution(int i) {
  if (i < 2) throw std::invalid_argument("jump_distribution: need i >= 2");
  Eigen::VectorXd p(i - 1);
  for (int j = 1; j < i; ++j) p(j - 1) = generator_entry(i, j) / (i - 1.0);
  return p;
}

int JumpChainPath::state_at(double t) const {
  if (!(t >= 0.0) || t > horizon)
    throw std::out_of_range("JumpChainPath::state_at: t outside [0, horizon]");
  auto it = std::upper_bound(times.begin(), times.end(), t);
  return states[static_cast<std::size_t>(it - times.begin()) - 1];
}

JumpChainPath simulate_path(const CoalescentSpec& spec, double horizon, Rng& rng) {
  spec.validate();
  if (!(horizon >= 0.0)) throw std::invalid_argument("simulate_path: horizon must be >= 0");
  JumpChainPath path;
  path.horizon = horizon;
  path.times.push_back(0.0);
  path.states.push_back(spec.n);
  int i = spec.n;
  double t = 0.0;
  while (i > 1) {
    t += rng.exponential(i - 1.0);
    if (t >= horizon) break;
    // Jump size S has P(S <= s) = (i/(i-1)) (1 - 1/(s+1)); invert in O(1).
    const double u = rng.uniform();
    const double g = 1.0 / (1.0 - u * (i - 1.0) / i);
    auto s = static_cast<long>(std::ceil(g - 1.0));
    s = std::clamp(s, 1L, static_cast<long>(i - 1));
    i -= static_cast<int>(s);
    path.times.push_back(t);
    path.states.push_back(i);
  }
  return path;
}

namespace {

// Unnormalized row p_{n,j}(t), j = 1..n, in the working type Real.
template <class Real>
void alternating_row(int n, const std::vector<Real>& decay, const StirlingTables& tables,
                     std::vector<Real>& row) {
  row.assign(n, Real(0));
  BigInt denom = 1;  // prod_{r=j}^{n-1} r = Gamma(n)/Gamma(j), built downward
  for (int j = n; j >= 1; --j) {
    if (j < n) denom *= j;
    Real acc(0);
    for (int k = j; k <= n; ++k) {
      const BigInt c = tables.first_signed(n, k) * tables.second(k, j);
      if (!c.is_zero()) acc += decay[k] * Real(c);
    }
    if ((n + j) % 2 != 0) acc = -acc;
    row[j - 1] = acc / Real(denom);
  }
}

template <class Real>
Eigen::VectorXd finalize_row(std::vector<Real>& row, int bits) {
  Real sum(0);
  for (Real& e : row) {
    if (e < 0) {
      if (e < Real(-1e-20)) {
        std::ostringstream msg;
        msg << "transition probabilities: entry " << static_cast<double>(e)
            << " is negative beyond -1e-20; increase PrecisionContext bits (currently " << bits
            << ")";
        throw PrecisionError(msg.str());
      }
      e = 0;
    }
    sum += e;
  }
  const double defect = std::abs(1.0 - static_cast<double>(sum));
  if (defect > 1e-10) {
    std::ostringstream msg;
    msg << "transition probabilities: row sum deviates from 1 by " << defect
        << "; increase PrecisionContext bits (currently " << bits << ")";
    throw PrecisionError(msg.str());
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(row.size()));
  for (std::size_t j = 0; j < row.size(); ++j)
    out(static_cast<Eigen::Index>(j)) = static_cast<double>(row[j] / sum);
  return out;
}

template <class Real>
std::vector<Real> decay_factors(int n, double t) {
  // decay[k] = e^{-(k-1) t}, k = 1..n.
  std::vector<Real> decay(n + 1, Real(1));
  const Real step = exp(-Real(t));
  for (int k = 2; k <= n; ++k) decay[k] = decay[k - 1] * step;
  return decay;
}

void check_transition_args(const CoalescentSpec& spec, double t, const StirlingTables& tables,
                           const PrecisionContext& ctx) {
  spec.validate();
  ctx.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("transition probabilities: t must be >= 0");
  if (spec.n > tables.n_max())
    throw std::invalid_argument("transition probabilities: StirlingTables n_max " +
                                std::to_string(tables.n_max()) + " is below n = " +
                                std::to_string(spec.n));
}

}  // namespace

Eigen::VectorXd transition_distribution(const CoalescentSpec& spec, double t,
                                        const StirlingTables& tables,
                                        const PrecisionContext& ctx) {
  check_transition_args(spec, t, tables, ctx);
  return with_precision(ctx.bits, [&](auto zero) {
    using Real = decltype(zero);
    const auto decay = decay_factors<Real>(spec.n, t);
    std::vector<Real> row;
    alternating_row<Real>(spec.n, decay, tables, row);
    return finalize_row(row, ctx.bits);
  });
}

Eigen::MatrixXd transition_matrix(const CoalescentSpec& spec, double t,
                                  const StirlingTables& tables, const PrecisionContext& ctx) {
  check_transition_args(spec, t, tables, ctx);
  return with_precision(ctx.bits, [&](auto zero) {
    using Real = decltype(zero);
    const int n = spec.n;
    const auto decay = decay_factors<Real>(n, t);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    std::vector<Real> row;
    for (int i = 1; i <= n; ++i) {
      alternating_row<Real>(i, decay, tables, row);
      m.row(i - 1).head(i) = finalize_row(row, ctx.bits).transpose();
    }
    return m;
  });
}

double factorial_moment(const CoalescentSpec& spec, double t, double m) {
  spec.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("factorial_moment: t must be >= 0");
  if (!(m >= 0.0)) throw std::invalid_argument("factorial_moment: m must be >= 0");
  if (m == 0.0) return 1.0;
  const double a = m * std::exp(-t);
  return std::exp(log_gamma(m + 1.0) - log_gamma(1.0 + a) +
                  log_ascending_factorial(spec.n, a));
}

std::pair<double, double> mean_and_variance(const CoalescentSpec& spec, double t) {
  const double mean = factorial_moment(spec, t, 1.0);
  const double second = factorial_moment(spec, t, 2.0);  // E(N(N+1))
  const double var = second - mean - mean * mean;
  return {mean, var > 0.0 ? var : 0.0};
}

double joint_factorial_moment(const CoalescentSpec& spec, const MomentQuery& query) {
  spec.validate();
  const auto& x = query.weights();
  double lg = log_ascending_factorial(spec.n, x[0]);
  for (std::size_t j = 1; j <= query.size(); ++j)
    lg += log_gamma(1.0 + x[j] + query.exponents[j - 1]) - log_gamma(1.0 + x[j - 1]);
  return std::exp(lg);
}

double scaled_raw_moment(const CoalescentSpec& spec, double t, int m,
                         const StirlingTables& tables) {
  spec.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("scaled_raw_moment: t must be >= 0");
  if (m < 0) throw std::invalid_argument("scaled_raw_moment: m must be >= 0");
  if (m > tables.n_max())
    throw std::invalid_argument("scaled_raw_moment: m exceeds StirlingTables n_max");
  if (m == 0) return 1.0;
  const double a = std::exp(-t);
  const double scale = m * a * std::log(spec.n);
  double total = 0.0;
  for (int i = 1; i <= m; ++i) {
    const double term = std::exp(log_gamma(i + 1.0) - log_gamma(1.0 + i * a) +
                                 log_ascending_factorial(spec.n, i * a) - scale);
    const double sign = ((m - i) % 2 == 0) ? 1.0 : -1.0;
    total += sign * static_cast<double>(tables.second(m, i)) * term;
  }
  return total;
}

double inhomogeneous_semigroup_monomial(const CoalescentSpec& spec, double s, double t,
                                        int m, double x, const StirlingTables& tables) {
  spec.validate();
  if (!(s >= 0.0) || !(t >= 0.0))
    throw std::invalid_argument("inhomogeneous_semigroup_monomial: times must be >= 0");
  if (m < 0) throw std::invalid_argument("inhomogeneous_semigroup_monomial: m must be >= 0");
  if (m > tables.n_max())
    throw std::invalid_argument("inhomogeneous_semigroup_monomial: m exceeds StirlingTables n_max");
  if (!(x > 0.0)) throw std::invalid_argument("inhomogeneous_semigroup_monomial: x must be > 0");
  if (m == 0) return 1.0;
  const double a = std::exp(-t);
  const double j = x * std::pow(spec.n, std::exp(-s));
  const double scale = m * std::exp(-(s + t)) * std::log(spec.n);
  double total = 0.0;
  for (int i = 1; i <= m; ++i) {
    const double term = std::exp(log_gamma(i + 1.0) - log_gamma(1.0 + i * a) +
                                 log_ascending_factorial(j, i * a) - scale);
    const double sign = ((m - i) % 2 == 0) ? 1.0 : -1.0;
    total += sign * static_cast<double>(tables.second(m, i)) * term;
  }
  return total;
}

namespace {

// Linear span of ascending factorials [j]_a with real exponents, closed under
// multiplication by (j + c) and under one-step conditional expectation of the
// chain. Keyed by exponent; exponents produced along identical arithmetic
// paths compare equal, so merging is deterministic.
using FactorialSpan = std::map<double, double>;

FactorialSpan multiply_linear(const FactorialSpan& terms, double c) {
  // (j + c) [j]_a = [j]_{a+1} + (c - a) [j]_a
  FactorialSpan out;
  for (const auto& [a, coef] : terms) {
    out[a + 1.0] += coef;
    out[a] += (c - a) * coef;
  }
  return out;
}

FactorialSpan condition_back(const FactorialSpan& terms, double dt) {
  // E([N_{t}]_a | N_{t - dt} = j) = (Gamma(1+a)/Gamma(1+a b)) [j]_{a b}, b = e^{-dt}
  const double b = std::exp(-dt);
  FactorialSpan out;
  for (const auto& [a, coef] : terms) {
    if (coef == 0.0) continue;
    const double scaled = a * b;
    out[scaled] += coef * std::exp(log_gamma(1.0 + a) - log_gamma(1.0 + scaled));
  }
  return out;
}

void check_tower_times(const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("joint moment: need at least one time");
  if (!(times.front() >= 0.0)) throw std::invalid_argument("joint moment: times must be >= 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("joint moment: times must be strictly increasing");
}

}  // namespace

double joint_shifted_product_moment(const CoalescentSpec& spec,
                                    const std::vector<double>& times,
                                    const std::vector<std::vector<double>>& shifts) {
  spec.validate();
  check_tower_times(times);
  if (shifts.size() != times.size())
    throw std::invalid_argument("joint_shifted_product_moment: one shift list per time");
  std::size_t factors = 0;
  for (const auto& s : shifts) factors += s.size();
  if (factors > 16)
    throw std::invalid_argument("joint_shifted_product_moment: more than 16 linear factors");
  FactorialSpan terms{{0.0, 1.0}};
  for (std::size_t j = times.size(); j >= 1; --j) {
    for (double c : shifts[j - 1]) terms = multiply_linear(terms, c);
    const double tprev = (j >= 2) ? times[j - 2] : 0.0;
    terms = condition_back(terms, times[j - 1] - tprev);
  }
  double total = 0.0;
  for (const auto& [a, coef] : terms)
    if (coef != 0.0) total += coef * ascending_factorial(spec.n, a);
  return total;
}

double joint_raw_moment(const CoalescentSpec& spec, const std::vector<double>& times,
                        const std::vector<int>& exponents) {
  if (exponents.size() != times.size())
    throw std::invalid_argument("joint_raw_moment: one exponent per time");
  std::vector<std::vector<double>> shifts(times.size());
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    if (exponents[j] < 0)
      throw std::invalid_argument("joint_raw_moment: exponents must be >= 0");
    shifts[j].assign(static_cast<std::size_t>(exponents[j]), 0.0);
  }
  return joint_shifted_product_moment(spec, times, shifts);
}

}  // namespace mlcoal
