// SPDX-License-Identifier: Apache-2.0
#include "mlcoal/subordinator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "mlcoal/precision.hpp"
#include "mlcoal/specfun.hpp"

namespace mlcoal {

SubordinatorSpec::SubordinatorSpec(double alpha_, double step_, double truncation_)
    : alpha(alpha_), step(step_), truncation(truncation_) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("SubordinatorSpec: alpha must lie in (0, 1)");
  killing_rate = std::exp(-log_gamma(1.0 - alpha));
  validate();
}

void SubordinatorSpec::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("SubordinatorSpec: alpha must lie in (0, 1)");
  if (!(step > 0.0)) throw std::invalid_argument("SubordinatorSpec: step must be > 0");
  if (!(truncation > 0.0))
    throw std::invalid_argument("SubordinatorSpec: truncation must be > 0");
  const double expected = std::exp(-log_gamma(1.0 - alpha));
  if (std::abs(killing_rate - expected) > 1e-12 * expected)
    throw std::invalid_argument("SubordinatorSpec: killing_rate does not match 1/Gamma(1-alpha)");
}

double levy_density(const SubordinatorSpec& spec, double u) {
  spec.validate();
  if (!(u > 0.0)) throw std::invalid_argument("levy_density: u must be > 0");
  const double y = -std::expm1(-u / spec.alpha);  // 1 - e^{-u/alpha}
  return std::exp(-log_gamma(1.0 - spec.alpha) - u / spec.alpha -
                  (spec.alpha + 1.0) * std::log(y));
}

double laplace_exponent_closed(const SubordinatorSpec& spec, double x) {
  spec.validate();
  if (!(x >= 0.0)) throw std::invalid_argument("laplace_exponent_closed: x must be >= 0");
  const double a = spec.alpha;
  return std::exp(log_gamma(1.0 + a * x) - log_gamma(1.0 - a + a * x));
}

namespace {

// tanh_sinh with a convergence check; integrand may be endpoint-singular.
template <class F>
double integrate_checked(const F& f, double lo, double hi, const char* what) {
  boost::math::quadrature::tanh_sinh<double> quad;
  double error = 0.0, l1 = 0.0;
  const double value = quad.integrate(f, lo, hi, 1e-9, &error, &l1);
  if (!(error < 1e-7) || !std::isfinite(value))
    throw PrecisionError(std::string(what) +
                         ": tanh-sinh quadrature did not converge (estimated relative error " +
                         std::to_string(error) + ")");
  return value;
}

}  // namespace

double laplace_exponent_quadrature(const SubordinatorSpec& spec, double x) {
  spec.validate();
  if (!(x >= 0.0)) throw std::invalid_argument("laplace_exponent_quadrature: x must be >= 0");
  if (x == 0.0) return spec.killing_rate;
  const double a = spec.alpha;
  const double scale = a * std::exp(-log_gamma(1.0 - a));
  const double ax = a * x;
  // In the y = 1 - e^{-u/alpha} coordinates the integrand carries a factor
  // y^{-alpha-1}, which overflows at the near-endpoint abscissas tanh-sinh
  // probes. Substituting y = e^{-w} gives a bounded integrand on (0, inf)
  // that decays like e^{-(1-alpha)w}.
  auto f = [ax, a, scale](double w) {
    const double ew = std::exp(-w);
    if (ew == 0.0) return 0.0;  // tail underflow; true value ~ e^{-(1-a)w}
    const double num = -std::expm1(ax * std::log1p(-ew));
    return scale * num * std::exp(a * w);
  };
  const double inf = std::numeric_limits<double>::infinity();
  return spec.killing_rate + integrate_checked(f, 0.0, inf, "laplace_exponent_quadrature");
}

double jump_rate_above_truncation(const SubordinatorSpec& spec) {
  spec.validate();
  const double y = -std::expm1(-spec.truncation / spec.alpha);
  return (std::pow(y, -spec.alpha) - 1.0) * std::exp(-log_gamma(1.0 - spec.alpha));
}

double small_jump_drift(const SubordinatorSpec& spec) {
  spec.validate();
  const double a = spec.alpha;
  const double y_cut = -std::expm1(-spec.truncation / a);
  const double scale = a * std::exp(-log_gamma(1.0 - a));
  // Same y = e^{-w} substitution as the Laplace-exponent quadrature.
  auto f = [a, scale](double w) {
    const double ew = std::exp(-w);
    if (ew == 0.0) return 0.0;
    const double u = -a * std::log1p(-ew);
    return scale * u * std::exp(a * w);
  };
  const double inf = std::numeric_limits<double>::infinity();
  return integrate_checked(f, -std::log(y_cut), inf, "small_jump_drift");
}

ExponentialFunctionalSampler::ExponentialFunctionalSampler(const SubordinatorSpec& spec)
    : spec_(spec) {
  spec_.validate();
  if (spec_.step > 1e-2 + 1e-15)
    throw std::invalid_argument("ExponentialFunctionalSampler: step must be <= 1e-2");
  if (spec_.truncation > 1e-4 + 1e-18)
    throw std::invalid_argument("ExponentialFunctionalSampler: truncation must be <= 1e-4");
  y_cut_ = -std::expm1(-spec_.truncation / spec_.alpha);
  y_cut_pow_ = std::pow(y_cut_, -spec_.alpha);
  jump_rate_ = jump_rate_above_truncation(spec_);
  drift_ = small_jump_drift(spec_);
}

double ExponentialFunctionalSampler::sample(Rng& rng) const {
  const double kill_time = rng.exponential(spec_.killing_rate);
  double tau = 0.0, s = 0.0, integral = 0.0;
  double next_jump = rng.exponential(jump_rate_);
  double exp_s = 1.0;  // e^{-s} at tau
  while (tau < kill_time) {
    const double t_next = std::min({tau + spec_.step, next_jump, kill_time});
    const double dt = t_next - tau;
    const double s_next = s + drift_ * dt;
    const double exp_next = std::exp(-s_next);
    integral += 0.5 * dt * (exp_s + exp_next);
    tau = t_next;
    s = s_next;
    exp_s = exp_next;
    if (tau == next_jump) {
      // Inverse CDF of the capped jump law in the y variable:
      // P(Y <= y) proportional to y_cut^{-a} - y^{-a} on (y_cut, 1).
      const double u = rng.uniform();
      double y = std::pow(y_cut_pow_ - u * (y_cut_pow_ - 1.0), -1.0 / spec_.alpha);
      y = std::min(y, 1.0 - 1e-16);
      s += -spec_.alpha * std::log1p(-y);
      exp_s = std::exp(-s);
      next_jump = tau + rng.exponential(jump_rate_);
    }
  }
  return integral;
}

double exponential_functional_sample(const SubordinatorSpec& spec, Rng& rng) {
  return ExponentialFunctionalSampler(spec).sample(rng);
}

}  // namespace mlcoal
