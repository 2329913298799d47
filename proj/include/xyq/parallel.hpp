#pragma once
// Minimal worker pool for embarrassingly parallel row evaluation.  Results
// land in caller-preallocated slots indexed by row, so the output is
// identical no matter how many workers run or how the rows interleave.

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace xyq {

// Worker count: the XYQ_WORKERS environment variable overrides the hardware
// default; invalid or absent values fall back to hardware_concurrency().
inline unsigned default_workers() {
  if (const char* env = std::getenv("XYQ_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096)
      return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Run body(i) for i in [0, n); body must not throw (wrap and record errors
// per slot instead).  workers <= 1 runs inline.
template <class F>
void parallel_for(std::size_t n, unsigned workers, F&& body) {
  if (n == 0) return;
  const unsigned use = workers > n ? static_cast<unsigned>(n) : workers;
  if (use <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(use);
  for (unsigned w = 0; w < use; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace xyq
