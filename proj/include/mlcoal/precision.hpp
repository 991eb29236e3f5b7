// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace mlcoal {

using BigInt = boost::multiprecision::cpp_int;

// Raised when an alternating-sum evaluation cannot meet its accuracy target
// at the requested working precision.
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Working-precision knobs for evaluations that are ill-conditioned in double.
// `bits` is the mantissa width of the internal floating type; requests are
// rounded up to the next supported tier (128, 256, 512, 1024).
struct PrecisionContext {
  int bits = 256;
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;

  void validate() const {
    if (bits < 64) throw std::invalid_argument("PrecisionContext: bits must be >= 64");
    if (bits > 1024)
      throw std::invalid_argument("PrecisionContext: bits above 1024 are not supported");
    if (!(abs_tol > 0) || !(rel_tol > 0))
      throw std::invalid_argument("PrecisionContext: tolerances must be positive");
  }
};

namespace detail {

template <unsigned Bits>
using BinFloat =
    boost::multiprecision::number<boost::multiprecision::backends::cpp_bin_float<
                                      Bits, boost::multiprecision::backends::digit_base_2>,
                                  boost::multiprecision::et_off>;

}  // namespace detail

using Float128 = detail::BinFloat<128>;
using Float256 = detail::BinFloat<256>;
using Float512 = detail::BinFloat<512>;
using Float1024 = detail::BinFloat<1024>;

// Runs `fn` with a zero-initialized value of the tier covering `bits`; the
// callable must return the same type for every tier.
template <class Fn>
decltype(auto) with_precision(int bits, Fn&& fn) {
  if (bits < 64 || bits > 1024)
    throw std::invalid_argument("with_precision: bits must be in [64, 1024], got " +
                                std::to_string(bits));
  if (bits <= 128) return fn(Float128{});
  if (bits <= 256) return fn(Float256{});
  if (bits <= 512) return fn(Float512{});
  return fn(Float1024{});
}

}  // namespace mlcoal
