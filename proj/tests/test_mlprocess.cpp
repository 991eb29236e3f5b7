// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "mlcoal/mlprocess.hpp"
#include "mlcoal/specfun.hpp"
#include "mlcoal/stats.hpp"
#include "oracles.hpp"

using namespace mlcoal;

TEST_CASE("distribution moments") {
  CHECK(ml_moment(1.0, 7.3) == doctest::Approx(1.0));
  CHECK(ml_moment(0.0, 3.0) == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(ml_moment(0.4, 0.0) == doctest::Approx(1.0));
  CHECK(ml_moment(0.5, 1.0) == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("sampler endpoints are exact") {
  Rng rng(1, 0);
  for (int i = 0; i < 10; ++i) CHECK(ml_sample(1.0, rng) == 1.0);
  MomentAccumulator acc;
  for (int i = 0; i < 20000; ++i) acc.add(ml_sample(0.0, rng));
  CHECK(std::abs(acc.mean() - 1.0) < 4.0 * acc.std_error());
}

TEST_CASE("sampler moments match the closed form") {
  for (double alpha : {0.3, 0.7}) {
    Rng rng(5, static_cast<std::uint64_t>(alpha * 10));
    MomentAccumulator acc[4];
    for (int i = 0; i < 100000; ++i) {
      const double x = ml_sample(alpha, rng);
      double p = 1.0;
      for (auto& a : acc) {
        p *= x;
        a.add(p);
      }
    }
    for (int m = 1; m <= 4; ++m) {
      const double exact = ml_moment(alpha, m);
      CHECK(std::abs(acc[m - 1].mean() - exact) < 4.0 * acc[m - 1].std_error());
    }
  }
}

TEST_CASE("kernel moments") {
  CHECK(kernel_moment(0.9, 2.0, 0.0) == doctest::Approx(1.0));
  CHECK(kernel_moment(0.9, 0.0, 2.0) == doctest::Approx(0.0));
  // identity kernel at t = 0
  CHECK(kernel_moment(0.0, 1.7, 3.0) == doctest::Approx(std::pow(1.7, 3.0)).epsilon(1e-12));
  // from x = 1 the kernel moment is the marginal moment of the process
  CHECK(kernel_moment(0.8, 1.0, 2.0) ==
        doctest::Approx(ml_moment(std::exp(-0.8), 2.0)).epsilon(1e-13));
}

TEST_CASE("kernel sampler matches kernel moments") {
  Rng rng(17, 0);
  const double t = 0.7, x = 2.0;
  MomentAccumulator acc1, acc2;
  for (int i = 0; i < 100000; ++i) {
    const double y = kernel_sample(t, x, rng);
    acc1.add(y);
    acc2.add(y * y);
  }
  CHECK(std::abs(acc1.mean() - kernel_moment(t, x, 1.0)) < 4.0 * acc1.std_error());
  CHECK(std::abs(acc2.mean() - kernel_moment(t, x, 2.0)) < 4.0 * acc2.std_error());
}

TEST_CASE("composition defect of the kernel moments is tiny") {
  PrecisionContext ctx;
  const auto defects = chapman_kolmogorov_defect(0.3, 2.0, 4.0, 10, ctx);
  REQUIRE(defects.size() == 11);
  for (double d : defects) CHECK(d < 1e-10);
}

TEST_CASE("joint moments agree with the kernel-recursion oracle") {
  const std::vector<double> times{0.4, 0.9, 2.0};
  const std::vector<double> ms{1.0, 2.0, 1.5};
  const MomentQuery query(times, ms);
  CHECK(joint_moment(query) ==
        doctest::Approx(oracle::joint_moment_recursive(times, ms)).epsilon(1e-12));
  // single time: marginal moment
  const MomentQuery one({0.6}, {2.0});
  CHECK(joint_moment(one) == doctest::Approx(ml_moment(std::exp(-0.6), 2.0)).epsilon(1e-13));
}

TEST_CASE("mean, variance and covariance") {
  // t -> infinity: stationary law is standard exponential
  const auto [mean_inf, var_inf] = process_mean_var(40.0);
  CHECK(mean_inf == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(var_inf == doctest::Approx(1.0).epsilon(1e-9));
  // t = 0: the process starts at the constant 1
  const auto [mean0, var0] = process_mean_var(0.0);
  CHECK(mean0 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(var0) < 1e-12);
  // the mean is maximal at the turning point
  const double t0 = mean_turning_time();
  const double peak = process_mean_var(t0).first;
  CHECK(peak > process_mean_var(t0 - 0.05).first);
  CHECK(peak > process_mean_var(t0 + 0.05).first);
  // covariance: symmetric, variance on the diagonal
  CHECK(process_covariance(0.7, 0.7) == doctest::Approx(process_mean_var(0.7).second).epsilon(1e-12));
  CHECK(process_covariance(0.4, 1.3) == doctest::Approx(process_covariance(1.3, 0.4)).epsilon(1e-13));
}

TEST_CASE("covariance matches kernel-sampling Monte Carlo") {
  const double s = 0.5, t = 1.5;
  const double exact = process_covariance(s, t);
  Rng rng(123, 0);
  MomentAccumulator prod;
  const int reps = 200000;
  for (int i = 0; i < reps; ++i) {
    const double xs = ml_sample(std::exp(-s), rng);
    const double xt = kernel_sample(t - s, xs, rng);
    prod.add(xs * xt);
  }
  // exact means, so the only noise is in the product term
  const double est = prod.mean() - process_mean_var(s).first * process_mean_var(t).first;
  CHECK(std::abs(est - exact) < 4.0 * prod.std_error());
}

TEST_CASE("generator coefficients") {
  const double euler = 0.57721566490153286;
  CHECK(generator_coeff(1, 1.0) == doctest::Approx(1.0 - euler).epsilon(1e-12));
  CHECK(generator_coeff(2, 1.7) == doctest::Approx(1.7 * 1.7).epsilon(1e-13));
  CHECK(generator_coeff(3, 2.0) == doctest::Approx(-8.0 / 2.0).epsilon(1e-13));
  CHECK(generator_coeff(4, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(generator_coeff(1, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS(generator_coeff(0, 1.0));
}

TEST_CASE("series route equals the closed monomial action") {
  for (double x : {0.5, 1.7}) {
    for (int m : {1, 2, 3, 4}) {
      std::vector<double> derivs(static_cast<std::size_t>(m));
      double falling = 1.0;
      for (int j = 1; j <= m; ++j) {
        falling *= m - j + 1;
        derivs[static_cast<std::size_t>(j - 1)] = falling * std::pow(x, m - j);
      }
      std::vector<double> mono(static_cast<std::size_t>(m) + 1, 0.0);
      mono.back() = 1.0;
      CHECK(generator_apply(x, derivs) ==
            doctest::Approx(generator_poly_action(x, mono)).epsilon(1e-12));
    }
  }
}

TEST_CASE("difference quotients approach the generator action") {
  const double est = generator_limit_estimate(2, 1.0, 1e-5);
  std::vector<double> mono{0.0, 0.0, 1.0};
  CHECK(std::abs(est - generator_poly_action(1.0, mono)) < 1e-3);
}

TEST_CASE("characteristic function of the log process") {
  CHECK(std::abs(characteristic_function(0.7, 0.0) - 1.0) < 1e-14);
  CHECK(std::abs(characteristic_function(0.0, 2.3) - 1.0) < 1e-13);
  for (double theta : {0.5, 2.0, 9.0}) {
    const auto phi = characteristic_function(0.8, theta);
    CHECK(std::abs(phi) <= 1.0 + 1e-12);
    const auto conj = characteristic_function(0.8, -theta);
    CHECK(std::abs(conj - std::conj(phi)) < 1e-13);
  }
  // dual route via the Lanczos oracle
  const double t = 0.8, theta = 2.3;
  const auto lib = characteristic_function(t, theta);
  const auto ref = std::exp(oracle::lanczos_log_gamma({1.0, theta}) -
                            oracle::lanczos_log_gamma({1.0, theta * std::exp(-t)}));
  CHECK(std::abs(lib - ref) < 1e-11);
}

TEST_CASE("semigroup on polynomials") {
  CHECK(semigroup_apply_poly(0.9, {1.0}, 3.0) == doctest::Approx(1.0));
  CHECK(semigroup_apply_poly(0.9, {0.0, 1.0}, 1.0) ==
        doctest::Approx(process_mean_var(0.9).first).epsilon(1e-13));
  // t = 0 and f(y) = y^2 - y
  CHECK(semigroup_apply_poly(0.0, {0.0, -1.0, 1.0}, 1.8) ==
        doctest::Approx(1.8 * 1.8 - 1.8).epsilon(1e-12));
  // linearity
  const double a = semigroup_apply_poly(0.4, {0.0, 2.0, 3.0}, 1.2);
  const double b = 2.0 * semigroup_apply_poly(0.4, {0.0, 1.0}, 1.2) +
                   3.0 * semigroup_apply_poly(0.4, {0.0, 0.0, 1.0}, 1.2);
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
}
