// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mlcoal {

// splitmix64 step; used to derive well-separated stream seeds from
// (master seed, stream id) pairs.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s ^= stream * 0x9e3779b97f4a7c15ULL;
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x632be59bd9b4e019ULL);
}

// Deterministic per-stream generator. Identical (master, stream) pairs yield
// identical draw sequences on every platform: the variate transforms below are
// written out by hand instead of relying on std::*_distribution, whose output
// is not pinned by the standard.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream)
      : engine_(derive_stream_seed(master_seed, stream)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0, 1); safe inside log/sin.
  double uniform_open() {
    return static_cast<double>(next_u64() >> 12) * 0x1.0p-52 + 0x1.0p-53;
  }

  // Exponential with the given rate > 0.
  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mlcoal
