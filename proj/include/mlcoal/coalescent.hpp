// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mlcoal/moment_query.hpp"
#include "mlcoal/precision.hpp"
#include "mlcoal/rng.hpp"
#include "mlcoal/stirling.hpp"

namespace mlcoal {

// Block-counting chain on {1, ..., n} started at n. Rates: from state i the
// chain waits Exp(i-1) and drops to j < i with probability
// i / ((i-1)(i-j)(i-j+1)); state 1 is absorbing.
struct CoalescentSpec {
  int n = 2;
  void validate() const;
};

// q_{ij}: off-diagonal i/((i-j)(i-j+1)) for j < i, diagonal 1-i, else 0.
double generator_entry(int i, int j);

// Dense n x n generator, entry (i-1, j-1) = q_{ij}.
Eigen::MatrixXd generator_matrix(int n);

// Distribution of the next state from i >= 2; entry j-1 = P(jump to j).
Eigen::VectorXd jump_distribution(int i);

// Right-continuous step path of the chain on [0, horizon].
struct JumpChainPath {
  std::vector<double> times;   // event times, times[0] = 0
  std::vector<int> states;     // states[k] holds on [times[k], times[k+1])
  double horizon = 0.0;

  int state_at(double t) const;
};

JumpChainPath simulate_path(const CoalescentSpec& spec, double horizon, Rng& rng);

// p_{n,j}(t) for j = 1..n, evaluated from the alternating Stirling-number sum
//   p_{n,j}(t) = (-1)^{n+j} (Gamma(j)/Gamma(n)) sum_{k=j}^n e^{-(k-1)t} s(n,k) S(k,j)
// at the working precision of `ctx` (the sum cancels catastrophically in
// double). Entries in [-1e-20, 0) are clamped to zero; anything more negative
// raises PrecisionError. Row sums off 1 by more than 1e-10 raise
// PrecisionError suggesting a larger bits value; smaller deviations are
// renormalized away.
Eigen::VectorXd transition_distribution(const CoalescentSpec& spec, double t,
                                        const StirlingTables& tables,
                                        const PrecisionContext& ctx = {});

// Full n x n matrix of p_{i,j}(t), rows i = 1..n (lower triangular).
Eigen::MatrixXd transition_matrix(const CoalescentSpec& spec, double t,
                                  const StirlingTables& tables,
                                  const PrecisionContext& ctx = {});

// E([N_t]_m) = Gamma(m+1) [n]_{m e^{-t}} / Gamma(1 + m e^{-t}), real m >= 0,
// with [x]_a the ascending factorial.
double factorial_moment(const CoalescentSpec& spec, double t, double m);

// (mean, variance) of N_t.
std::pair<double, double> mean_and_variance(const CoalescentSpec& spec, double t);

// E( prod_j [N_{t_j} + x_j]_{m_j} ) with x_j the query weights:
//   [n]_{x_0} prod_{j=1}^k Gamma(1 + x_j + m_j) / Gamma(1 + x_{j-1}).
double joint_factorial_moment(const CoalescentSpec& spec, const MomentQuery& query);

// E( (N_t / n^{e^{-t}})^m ) exactly, via the Stirling expansion of the m-th
// power in the ascending-factorial basis. Integer m in [0, tables.n_max()].
double scaled_raw_moment(const CoalescentSpec& spec, double t, int m,
                         const StirlingTables& tables);

// The chain's two-step semigroup acting on the monomial p_m(y) = y^m at a
// point x of the section grid {j / n^{e^{-s}}}:
//   sum_{i=0}^m (-1)^{m-i} S(m,i) E(X_t^i) [x n^{e^{-s}}]_{i e^{-t}} / n^{m e^{-(s+t)}}.
// x may be any positive real; grid points make x n^{e^{-s}} an integer.
double inhomogeneous_semigroup_monomial(const CoalescentSpec& spec, double s, double t,
                                        int m, double x, const StirlingTables& tables);

// Exact E( prod_j N_{t_j}^{m_j} ) for nonnegative integer exponents at
// strictly increasing times, by backward conditional-expectation recursion in
// the ascending-factorial basis (no Stirling tables; works for large n).
double joint_raw_moment(const CoalescentSpec& spec, const std::vector<double>& times,
                        const std::vector<int>& exponents);

// Exact E( prod_j prod_r (N_{t_j} + shifts[j][r]) ): one linear factor per
// shift entry. Covers shifted powers (repeat a shift m times) and ascending
// factorials (shifts c, c+1, ..., c+m-1).
double joint_shifted_product_moment(const CoalescentSpec& spec,
                                    const std::vector<double>& times,
                                    const std::vector<std::vector<double>>& shifts);

}  // namespace mlcoal
