// SPDX-License-Identifier: Apache-2.0
#include <stdexcept>

#include <doctest.h>

#include "mlcoal/stirling.hpp"

using namespace mlcoal;

TEST_CASE("known small Stirling numbers") {
  const StirlingTables t(6);
  CHECK(t.first_signed(3, 2) == BigInt(-3));
  CHECK(t.first_signed(4, 1) == BigInt(-6));
  CHECK(t.first_signed(4, 2) == BigInt(11));
  CHECK(t.first_signed(5, 3) == BigInt(35));
  CHECK(t.first_signed(5, 2) == BigInt(-50));
  CHECK(t.second(3, 2) == BigInt(3));
  CHECK(t.second(4, 2) == BigInt(7));
  CHECK(t.second(5, 3) == BigInt(25));
  CHECK(t.second(6, 1) == BigInt(1));
}

TEST_CASE("boundary rows and columns") {
  const StirlingTables t(10);
  CHECK(t.first_signed(0, 0) == BigInt(1));
  CHECK(t.second(0, 0) == BigInt(1));
  for (int n = 1; n <= 10; ++n) {
    CHECK(t.first_signed(n, n) == BigInt(1));
    CHECK(t.second(n, n) == BigInt(1));
    CHECK(t.first_signed(n, 0) == BigInt(0));
    CHECK(t.second(n, 0) == BigInt(0));
  }
}

TEST_CASE("recurrences hold exactly up to 30") {
  const StirlingTables t(30);
  for (int n = 1; n < 30; ++n)
    for (int k = 1; k <= n; ++k) {
      CHECK(t.first_signed(n + 1, k) ==
            t.first_signed(n, k - 1) - BigInt(n) * t.first_signed(n, k));
      CHECK(t.second(n + 1, k) == t.second(n, k - 1) + BigInt(k) * t.second(n, k));
    }
}

TEST_CASE("the two kinds invert each other") {
  const StirlingTables t(30);
  for (int n = 0; n <= 30; ++n)
    for (int m = 0; m <= 30; ++m) {
      BigInt sum = 0;
      for (int k = m; k <= n; ++k) sum += t.first_signed(n, k) * t.second(k, m);
      CHECK(sum == BigInt(n == m ? 1 : 0));
    }
}

TEST_CASE("index checking") {
  const StirlingTables t(5);
  CHECK_THROWS_AS(t.first_signed(6, 2), std::out_of_range);
  CHECK_THROWS_AS(t.second(3, 4), std::out_of_range);
  CHECK_THROWS_AS(t.second(-1, 0), std::out_of_range);
  CHECK_THROWS_AS(StirlingTables(0), std::invalid_argument);
}
