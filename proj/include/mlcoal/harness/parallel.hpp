// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mlcoal {

// Evaluates out[i] = fn(i) for i in [0, count) across `jobs` workers. Work is
// handed out in fixed 1024-wide chunks and every slot is written exactly once,
// so the result is byte-identical for any worker count as long as fn(i)
// depends only on i (derive per-replicate Rng streams from i).
template <class Fn>
std::vector<double> parallel_map(std::int64_t count, int jobs, Fn&& fn) {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (jobs <= 1) {
    for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  constexpr std::int64_t kChunk = 1024;
  const std::int64_t chunks = (count + kChunk - 1) / kChunk;
  std::atomic<std::int64_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr err;
  auto worker = [&] {
    try {
      for (;;) {
        const std::int64_t c = next.fetch_add(1);
        if (c >= chunks) return;
        const std::int64_t lo = c * kChunk;
        const std::int64_t hi = std::min(lo + kChunk, count);
        for (std::int64_t i = lo; i < hi; ++i) out[static_cast<std::size_t>(i)] = fn(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mutex);
      if (!err) err = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace mlcoal
