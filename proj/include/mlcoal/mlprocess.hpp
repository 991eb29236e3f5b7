// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "mlcoal/moment_query.hpp"
#include "mlcoal/precision.hpp"
#include "mlcoal/rng.hpp"

namespace mlcoal {

// m-th moment Gamma(1+m)/Gamma(1+m*alpha) of the Mittag-Leffler distribution
// with parameter alpha in [0,1]; real m >= 0.
double ml_moment(double alpha, double m);

// Draw from the Mittag-Leffler distribution: with theta ~ U(0,pi) and
// w ~ Exp(1),
//   eta = sin(theta) w^{1-alpha} / ( sin(alpha theta)^alpha sin((1-alpha) theta)^{1-alpha} ),
// evaluated in log space. alpha = 0 degenerates to Exp(1), alpha = 1 to the
// constant 1; both are handled explicitly.
double ml_sample(double alpha, Rng& rng);

// m-th moment of the time-t transition kernel from x >= 0:
// x^{m e^{-t}} Gamma(1+m) / Gamma(1+m e^{-t}). Real m >= 0.
double kernel_moment(double t, double x, double m);

// Draw from the time-t kernel at x: x^{e^{-t}} * eta with eta ~ ML(e^{-t}).
double kernel_sample(double t, double x, Rng& rng);

// |T_{s+t} p_m(x) - T_s T_t p_m(x)| for m = 0..m_max, both compositions
// evaluated independently in the working precision of `ctx` (the closed forms
// reach ~1e7 on moderate grids, so double rounding would swamp an absolute
// defect target).
std::vector<double> chapman_kolmogorov_defect(double s, double t, double x, int m_max,
                                              const PrecisionContext& ctx = {});

// E( prod_j X_{t_j}^{m_j} ) for the process started at 1:
// prod_j Gamma(1 + x_j + m_j) / Gamma(1 + x_{j-1}) with the query weights x_j.
double joint_moment(const MomentQuery& query);

// (mean, variance) of X_t: 1/Gamma(1+e^{-t}) and 2/Gamma(1+2e^{-t}) - mean^2.
std::pair<double, double> process_mean_var(double t);

// Cov(X_s, X_t).
double process_covariance(double s, double t);

// Generator coefficient a_k(x) in A f(x) = sum_{k>=1} a_k(x) f^{(k)}(x) / k!:
//   a_1(x) = x (Psi(2) - log x),   a_k(x) = (-x)^k / (k-1)  for k >= 2.
double generator_coeff(int k, double x);

// Truncated generator series sum_{k=1}^K a_k(x) derivs[k-1] / k! with
// derivs[k-1] = f^{(k)}(x). Exact for polynomials of degree <= K.
double generator_apply(double x, const std::vector<double>& derivs);

// Closed-form action of the generator on p(y) = sum_m coeffs[m] y^m:
//   A p_m(x) = m (Psi(1+m) - log x) x^m.
double generator_poly_action(double x, const std::vector<double>& coeffs);

// Finite-t difference quotient (T_t p_k(x) - x^k)/t; tends to A p_k(x).
double generator_limit_estimate(int k, double x, double t);

// E( exp(i theta log X_t) ) = Gamma(1 + i theta) / Gamma(1 + i theta e^{-t}),
// the characteristic function of log X_t (X_0 = 1).
std::complex<double> characteristic_function(double t, double theta);

// T_t applied to the polynomial sum_m coeffs[m] y^m at x.
double semigroup_apply_poly(double t, const std::vector<double>& coeffs, double x);

}  // namespace mlcoal
