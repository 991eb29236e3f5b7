// SPDX-License-Identifier: Apache-2.0
#include "mlcoal/mlprocess.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "mlcoal/specfun.hpp"

namespace mlcoal {

namespace {

void check_alpha(double alpha, const char* fn) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw std::invalid_argument(std::string(fn) + ": alpha must lie in [0, 1]");
}

void check_time(double t, const char* fn) {
  if (!(t >= 0.0)) throw std::invalid_argument(std::string(fn) + ": t must be >= 0");
}

}  // namespace

double ml_moment(double alpha, double m) {
  check_alpha(alpha, "ml_moment");
  if (!(m >= 0.0)) throw std::invalid_argument("ml_moment: m must be >= 0");
  return std::exp(log_gamma(1.0 + m) - log_gamma(1.0 + m * alpha));
}

double ml_sample(double alpha, Rng& rng) {
  check_alpha(alpha, "ml_sample");
  if (alpha == 1.0) return 1.0;
  if (alpha == 0.0) return rng.exponential(1.0);
  const double theta = M_PI * rng.uniform_open();
  const double w = rng.exponential(1.0);
  const double log_eta = std::log(std::sin(theta)) + (1.0 - alpha) * std::log(w) -
                         alpha * std::log(std::sin(alpha * theta)) -
                         (1.0 - alpha) * std::log(std::sin((1.0 - alpha) * theta));
  return std::exp(log_eta);
}

double kernel_moment(double t, double x, double m) {
  check_time(t, "kernel_moment");
  if (!(x >= 0.0)) throw std::invalid_argument("kernel_moment: x must be >= 0");
  if (!(m >= 0.0)) throw std::invalid_argument("kernel_moment: m must be >= 0");
  if (m == 0.0) return 1.0;
  if (x == 0.0) return 0.0;
  const double a = std::exp(-t);
  return std::exp(m * a * std::log(x) + log_gamma(1.0 + m) - log_gamma(1.0 + m * a));
}

double kernel_sample(double t, double x, Rng& rng) {
  check_time(t, "kernel_sample");
  if (!(x >= 0.0)) throw std::invalid_argument("kernel_sample: x must be >= 0");
  const double a = std::exp(-t);
  const double eta = ml_sample(a, rng);
  if (x == 0.0) return 0.0;
  return std::pow(x, a) * eta;
}

std::vector<double> chapman_kolmogorov_defect(double s, double t, double x, int m_max,
                                              const PrecisionContext& ctx) {
  check_time(s, "chapman_kolmogorov_defect");
  check_time(t, "chapman_kolmogorov_defect");
  if (!(x >= 0.0)) throw std::invalid_argument("chapman_kolmogorov_defect: x must be >= 0");
  if (m_max < 0) throw std::invalid_argument("chapman_kolmogorov_defect: m_max must be >= 0");
  ctx.validate();
  return with_precision(ctx.bits, [&](auto zero) {
    using Real = decltype(zero);
    using boost::math::lgamma;
    const Real logx = (x > 0.0) ? log(Real(x)) : Real(0);
    std::vector<double> defects(static_cast<std::size_t>(m_max) + 1, 0.0);
    for (int m = 0; m <= m_max; ++m) {
      Real one_step, composed;
      if (m == 0) {
        one_step = composed = Real(1);
      } else if (x == 0.0) {
        one_step = composed = Real(0);
      } else {
        // T_{s+t} p_m(x) with the combined horizon in one shot.
        const Real a = exp(-(Real(s) + Real(t)));
        one_step = exp(Real(m) * a * logx + lgamma(Real(1 + m)) - lgamma(1 + Real(m) * a));
        // T_s (T_t p_m)(x): inner step maps p_m to a multiple of p_{m e^{-t}}.
        const Real mu = Real(m) * exp(-Real(t));
        const Real nu = mu * exp(-Real(s));
        composed = exp(lgamma(Real(1 + m)) - lgamma(1 + mu)) *
                   exp(nu * logx + lgamma(1 + mu) - lgamma(1 + nu));
      }
      defects[static_cast<std::size_t>(m)] = std::abs(static_cast<double>(one_step - composed));
    }
    return defects;
  });
}

double joint_moment(const MomentQuery& query) {
  const auto& x = query.weights();
  double lg = 0.0;
  for (std::size_t j = 1; j <= query.size(); ++j)
    lg += log_gamma(1.0 + x[j] + query.exponents[j - 1]) - log_gamma(1.0 + x[j - 1]);
  return std::exp(lg);
}

std::pair<double, double> process_mean_var(double t) {
  check_time(t, "process_mean_var");
  const double a = std::exp(-t);
  const double mean = std::exp(-log_gamma(1.0 + a));
  const double second = 2.0 * std::exp(-log_gamma(1.0 + 2.0 * a));
  const double var = second - mean * mean;
  return {mean, var > 0.0 ? var : 0.0};
}

double process_covariance(double s, double t) {
  check_time(s, "process_covariance");
  check_time(t, "process_covariance");
  if (s == t) return process_mean_var(t).second;
  const double lo = std::min(s, t), hi = std::max(s, t);
  const double cross = joint_moment(MomentQuery({lo, hi}, {1.0, 1.0}));
  return cross - process_mean_var(lo).first * process_mean_var(hi).first;
}

double generator_coeff(int k, double x) {
  if (k < 1) throw std::invalid_argument("generator_coeff: k must be >= 1");
  if (!(x >= 0.0)) throw std::invalid_argument("generator_coeff: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (k == 1) return x * (digamma(2.0) - std::log(x));
  return std::pow(-x, k) / (k - 1.0);
}

double generator_apply(double x, const std::vector<double>& derivs) {
  double total = 0.0;
  double kfact = 1.0;
  for (std::size_t k = 1; k <= derivs.size(); ++k) {
    kfact *= static_cast<double>(k);
    total += generator_coeff(static_cast<int>(k), x) * derivs[k - 1] / kfact;
  }
  return total;
}

double generator_poly_action(double x, const std::vector<double>& coeffs) {
  if (!(x > 0.0)) throw std::invalid_argument("generator_poly_action: x must be > 0");
  double total = 0.0;
  for (std::size_t m = 1; m < coeffs.size(); ++m) {
    const double md = static_cast<double>(m);
    total += coeffs[m] * md * (digamma(1.0 + md) - std::log(x)) * std::pow(x, md);
  }
  return total;
}

double generator_limit_estimate(int k, double x, double t) {
  if (k < 0) throw std::invalid_argument("generator_limit_estimate: k must be >= 0");
  if (!(x > 0.0)) throw std::invalid_argument("generator_limit_estimate: x must be > 0");
  if (!(t > 0.0)) throw std::invalid_argument("generator_limit_estimate: t must be > 0");
  return (kernel_moment(t, x, k) - std::pow(x, k)) / t;
}

std::complex<double> characteristic_function(double t, double theta) {
  check_time(t, "characteristic_function");
  if (theta == 0.0) return {1.0, 0.0};
  const std::complex<double> i_theta(0.0, theta);
  const std::complex<double> lg =
      log_gamma(1.0 + i_theta) - log_gamma(1.0 + i_theta * std::exp(-t));
  return std::exp(lg);
}

double semigroup_apply_poly(double t, const std::vector<double>& coeffs, double x) {
  check_time(t, "semigroup_apply_poly");
  double total = 0.0;
  for (std::size_t m = 0; m < coeffs.size(); ++m)
    if (coeffs[m] != 0.0) total += coeffs[m] * kernel_moment(t, x, static_cast<double>(m));
  return total;
}

}  // namespace mlcoal
