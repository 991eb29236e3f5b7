// SPDX-License-Identifier: Apache-2.0
#include "mlcoal/stirling.hpp"

#include <stdexcept>
#include <string>

namespace mlcoal {

StirlingTables::StirlingTables(int n_max) : n_max_(n_max) {
  if (n_max < 1) throw std::invalid_argument("StirlingTables: n_max must be >= 1");
  first_.resize(n_max + 1);
  second_.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    first_[n].assign(n + 1, 0);
    second_[n].assign(n + 1, 0);
  }
  first_[0][0] = 1;
  second_[0][0] = 1;
  for (int n = 0; n < n_max; ++n) {
    for (int k = 0; k <= n + 1; ++k) {
      BigInt s = (k > 0) ? first_[n][k - 1] : BigInt(0);
      if (k <= n) s -= n * first_[n][k];
      first_[n + 1][k] = s;

      BigInt S = (k > 0) ? second_[n][k - 1] : BigInt(0);
      if (k <= n) S += k * second_[n][k];
      second_[n + 1][k] = S;
    }
  }
}

void StirlingTables::check(int n, int k, const char* fn) const {
  if (n < 0 || n > n_max_ || k < 0 || k > n)
    throw std::out_of_range(std::string(fn) + ": need 0 <= k <= n <= " +
                            std::to_string(n_max_) + ", got n=" + std::to_string(n) +
                            " k=" + std::to_string(k));
}

const BigInt& StirlingTables::first_signed(int n, int k) const {
  check(n, k, "StirlingTables::first_signed");
  return first_[n][k];
}

const BigInt& StirlingTables::second(int n, int k) const {
  check(n, k, "StirlingTables::second");
  return second_[n][k];
}

}  // namespace mlcoal
