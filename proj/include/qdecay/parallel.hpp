#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qdecay {

// Worker count resolution: explicit argument wins, then the QDECAY_WORKERS
// environment variable, then 1. Parallelism here is about carving index
// ranges, not about changing results: every job indexes its randomness and
// output slots by sample index, so any worker count produces identical data.
inline int default_workers() {
  if (const char* env = std::getenv("QDECAY_WORKERS")) {
    const long v = std::atol(env);
    if (v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  return 1;
}

// Runs f(i) for i in [0, n), split into contiguous chunks across `workers`
// threads. The first exception thrown by any worker is rethrown after all
// threads join.
template <class F>
void parallel_for(std::size_t n, int workers, F&& f) {
  if (workers < 1) workers = 1;
  if (static_cast<std::size_t>(workers) > n) workers = n ? static_cast<int>(n) : 1;
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr first_error;
  std::mutex guard;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = chunk * static_cast<std::size_t>(w);
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(guard);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qdecay
