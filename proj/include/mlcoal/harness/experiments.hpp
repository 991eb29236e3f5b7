// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mlcoal/harness/config.hpp"
#include "mlcoal/harness/result.hpp"

namespace mlcoal {

// Exact scaled moments of the chain against the limit moments over n_list;
// gates: per-(t,m) monotone decrease and final difference < tolerance.
ExperimentResult run_converge_moments(const ExperimentConfig& cfg);

// Two-sample KS between scaled chain draws and limit draws over n_list;
// gates: p-value at the largest n above significance, overall KS decrease.
ExperimentResult run_converge_dist(const ExperimentConfig& cfg);

// Joint moments at k times: exact chain values (conditional-expectation
// recursion), the shifted-product route, Monte Carlo at the largest n, and
// the limit value; gates: monotone decrease and final difference < tolerance,
// Monte Carlo within 3 standard errors.
ExperimentResult run_fdd(const ExperimentConfig& cfg);

// Chapman-Kolmogorov checks: kernel moment defects (high precision) and chain
// matrix products P(s)P(t) vs P(s+t).
ExperimentResult run_ck_check(const ExperimentConfig& cfg);

// Sup over the section grid in [0, window] of |two-step chain semigroup - limit
// semigroup| on monomials; gates: monotone decrease, final sup < tolerance.
ExperimentResult run_semigroup_compare(const ExperimentConfig& cfg);

// Laplace exponent closed form vs quadrature, exponential-functional moments
// vs 1/Phi(1), 2/(Phi(1)Phi(2)), and KS against the direct limit sampler.
ExperimentResult run_subordinator_check(const ExperimentConfig& cfg);

// Difference quotients of the kernel semigroup on monomials, Richardson
// extrapolated to t=0, against the generator-coefficient series.
ExperimentResult run_generator_check(const ExperimentConfig& cfg);

// Dispatch on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace mlcoal
