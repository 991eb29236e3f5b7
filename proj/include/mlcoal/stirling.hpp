// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mlcoal/precision.hpp"

namespace mlcoal {

// Exact triangular tables of Stirling numbers, built once by recurrence:
//   s(n+1,k) = s(n,k-1) - n s(n,k)   (signed, first kind)
//   S(n+1,k) = S(n,k-1) + k S(n,k)   (second kind)
// Indices 0 <= k <= n <= n_max; out-of-range access throws std::out_of_range.
class StirlingTables {
 public:
  explicit StirlingTables(int n_max);

  int n_max() const { return n_max_; }

  // Signed first kind s(n,k): x(x-1)...(x-n+1) = sum_k s(n,k) x^k.
  const BigInt& first_signed(int n, int k) const;

  // Second kind S(n,k): number of partitions of n labels into k blocks.
  const BigInt& second(int n, int k) const;

 private:
  void check(int n, int k, const char* fn) const;

  int n_max_;
  std::vector<std::vector<BigInt>> first_, second_;
};

}  // namespace mlcoal
