// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "mlcoal/mlprocess.hpp"
#include "mlcoal/specfun.hpp"
#include "mlcoal/stats.hpp"
#include "mlcoal/subordinator.hpp"
#include "oracles.hpp"

using namespace mlcoal;

TEST_CASE("spec construction and validation") {
  CHECK_THROWS_AS(SubordinatorSpec(0.0), std::invalid_argument);
  CHECK_THROWS_AS(SubordinatorSpec(1.0), std::invalid_argument);
  CHECK_THROWS_AS(SubordinatorSpec(-0.2), std::invalid_argument);
  const SubordinatorSpec half(0.5);
  CHECK(half.killing_rate == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-13));
  SubordinatorSpec broken(0.3);
  broken.killing_rate *= 1.0 + 1e-9;
  CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("closed Laplace exponent values") {
  const SubordinatorSpec half(0.5);
  CHECK(laplace_exponent_closed(half, 0.0) == doctest::Approx(half.killing_rate).epsilon(1e-13));
  // Gamma(1.5)/Gamma(1) = sqrt(pi)/2
  CHECK(laplace_exponent_closed(half, 1.0) ==
        doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-13));
  // Gamma(2)/Gamma(1.5) = 2/sqrt(pi)
  CHECK(laplace_exponent_closed(half, 2.0) ==
        doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("quadrature route reproduces the closed form") {
  for (double alpha : {0.2, 0.5, 0.9}) {
    const SubordinatorSpec spec(alpha);
    for (double x : {0.5, 1.0, 3.0}) {
      const double closed = laplace_exponent_closed(spec, x);
      const double quad = laplace_exponent_quadrature(spec, x);
      CHECK(std::abs(closed - quad) < 1e-6 * std::abs(closed));
    }
  }
}

TEST_CASE("functional moments telescope to the distribution moments") {
  // m!/(Phi(1)...Phi(m)) collapses to Gamma(1+m)/Gamma(1+m alpha)
  const SubordinatorSpec spec(0.5);
  const double phi1 = laplace_exponent_closed(spec, 1.0);
  const double phi2 = laplace_exponent_closed(spec, 2.0);
  const double phi3 = laplace_exponent_closed(spec, 3.0);
  const double m3 = 6.0 / (phi1 * phi2 * phi3);
  CHECK(m3 == doctest::Approx(ml_moment(0.5, 3.0)).epsilon(1e-12));
  CHECK(m3 == doctest::Approx(4.51351666838205).epsilon(1e-10));
}

TEST_CASE("jump rate above the truncation matches direct tail quadrature") {
  for (double alpha : {0.3, 0.6}) {
    const SubordinatorSpec spec(alpha);
    const double closed = jump_rate_above_truncation(spec);
    const double quad = oracle::jump_tail_rate_quadrature(spec);
    CHECK(std::abs(closed - quad) < 1e-6 * closed);
  }
}

TEST_CASE("levy density is positive and decreasing") {
  const SubordinatorSpec spec(0.5);
  double prev = levy_density(spec, 0.05);
  for (double u : {0.1, 0.5, 1.0, 2.0}) {
    const double v = levy_density(spec, u);
    CHECK(v > 0.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS(levy_density(spec, 0.0));
}

TEST_CASE("sampler rejects too-coarse discretizations") {
  CHECK_THROWS_AS(ExponentialFunctionalSampler(SubordinatorSpec(0.5, 0.1, 1e-4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(ExponentialFunctionalSampler(SubordinatorSpec(0.5, 0.01, 1e-3)),
                  std::invalid_argument);
}

TEST_CASE("sampler draws reproduce under the same stream") {
  const SubordinatorSpec spec(0.5);
  const ExponentialFunctionalSampler sampler(spec);
  Rng a(11, 4), b(11, 4);
  for (int i = 0; i < 5; ++i) CHECK(sampler.sample(a) == sampler.sample(b));
}

TEST_CASE("sampler moments approach the exact functional moments") {
  const SubordinatorSpec spec(0.5);
  const ExponentialFunctionalSampler sampler(spec);
  Rng rng(2025, 0);
  MomentAccumulator first, second;
  for (int i = 0; i < 30000; ++i) {
    const double v = sampler.sample(rng);
    CHECK(v >= 0.0);
    first.add(v);
    second.add(v * v);
  }
  const double phi1 = laplace_exponent_closed(spec, 1.0);
  const double phi2 = laplace_exponent_closed(spec, 2.0);
  // Monte Carlo noise plus O(step, truncation) discretization bias
  CHECK(std::abs(first.mean() - 1.0 / phi1) < 0.02 * (1.0 / phi1));
  CHECK(std::abs(second.mean() - 2.0 / (phi1 * phi2)) < 0.02 * 2.0 / (phi1 * phi2));
}

TEST_CASE("functional law agrees with the distribution sampler") {
  const SubordinatorSpec spec(0.5);
  const ExponentialFunctionalSampler sampler(spec);
  Rng rng(3000, 0);
  std::vector<double> a(5000), b(5000);
  for (auto& v : a) v = sampler.sample(rng);
  for (auto& v : b) v = ml_sample(0.5, rng);
  const double d = ks_statistic(a, b);
  // reject only at the 0.1% level to keep the unit test robust
  CHECK(ks_pvalue(d, a.size(), b.size()) > 1e-3);
}
