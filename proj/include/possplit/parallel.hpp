#pragma once

// Deterministic fan-out for independent work items. Each item writes only
// its own slot and items are distributed round-robin, so the results are
// identical for any worker count; only the caller-side reduction order
// matters, and callers keep that fixed.

#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace possplit {

// POSSPLIT_THREADS caps the worker count; 0 (or 1) forces sequential
// execution. Unset falls back to the hardware thread count.
inline unsigned worker_cap() {
  if (const char* s = std::getenv("POSSPLIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && v >= 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Runs fn(0..n-1) on at most `workers` threads. Exceptions are captured
// per index and the lowest-index one is rethrown, so failure reporting
// does not depend on scheduling.
template <class Fn>
void parallel_for_index(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  const unsigned w = workers > n ? static_cast<unsigned>(n) : workers;
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += w) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace possplit
