// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mlcoal/rng.hpp"

namespace mlcoal {

// Killed subordinator whose exponential functional integral_0^zeta e^{-S_u} du
// has the Mittag-Leffler law with parameter alpha. Killing rate 1/Gamma(1-alpha),
// Levy density (1/Gamma(1-alpha)) e^{-u/alpha} (1 - e^{-u/alpha})^{-(alpha+1)}.
// `step` is the time grid used to integrate e^{-S} between jumps; `truncation`
// is the jump-size cutoff below which jumps are replaced by their mean drift.
struct SubordinatorSpec {
  double alpha = 0.5;
  double killing_rate = 0.0;
  double step = 0.01;
  double truncation = 1e-4;

  explicit SubordinatorSpec(double alpha_, double step_ = 0.01, double truncation_ = 1e-4);
  void validate() const;
};

// Levy density at u > 0.
double levy_density(const SubordinatorSpec& spec, double u);

// Laplace exponent Phi(x) = Gamma(1 + alpha x) / Gamma(1 - alpha + alpha x), x >= 0.
double laplace_exponent_closed(const SubordinatorSpec& spec, double x);

// Phi(x) = killing_rate + integral (1 - e^{-u x}) levy(u) du, by tanh-sinh
// quadrature in the variable y = 1 - e^{-u/alpha} (measure becomes
// (alpha/Gamma(1-alpha)) y^{-alpha-1} dy on (0,1)). Throws PrecisionError if
// the quadrature does not converge.
double laplace_exponent_quadrature(const SubordinatorSpec& spec, double x);

// Rate of jumps larger than the truncation cutoff:
// ((1 - e^{-truncation/alpha})^{-alpha} - 1) / Gamma(1-alpha).
double jump_rate_above_truncation(const SubordinatorSpec& spec);

// Mean mass of the discarded small jumps per unit time,
// integral_0^truncation u levy(u) du, by quadrature.
double small_jump_drift(const SubordinatorSpec& spec);

// Samples I = integral_0^zeta e^{-S_u} du: jumps above the cutoff are placed
// exactly (inverse-CDF in the y variable), smaller ones enter as drift, zeta
// is Exp(killing_rate), and e^{-S} is integrated by the trapezoid rule on the
// union of the step grid, the jump times, and zeta. Precomputes the spec's
// derived constants once; sample() is pure and safe to call concurrently from
// distinct Rng streams.
class ExponentialFunctionalSampler {
 public:
  explicit ExponentialFunctionalSampler(const SubordinatorSpec& spec);
  double sample(Rng& rng) const;
  const SubordinatorSpec& spec() const { return spec_; }

 private:
  SubordinatorSpec spec_;
  double y_cut_;       // 1 - e^{-truncation/alpha}
  double y_cut_pow_;   // y_cut^{-alpha}
  double jump_rate_;
  double drift_;
};

// One-off convenience wrapper around ExponentialFunctionalSampler.
double exponential_functional_sample(const SubordinatorSpec& spec, Rng& rng);

}  // namespace mlcoal
