#pragma once

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace camr {

// Worker count comes from the CAMR_WORKERS environment variable (default 1).
// Workers only compute payloads into pre-indexed slots; delivery and logging
// stay sequential, so results are identical for every worker count.
inline int worker_count() {
  const char* env = std::getenv("CAMR_WORKERS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

template <typename F>
void parallel_for(std::size_t n, F&& body) {
  int workers = worker_count();
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  if (std::size_t(workers) > n) workers = int(n);
  std::vector<std::thread> threads;
  threads.reserve(std::size_t(workers));
  std::size_t chunk = (n + std::size_t(workers) - 1) / std::size_t(workers);
  std::mutex error_mutex;
  std::exception_ptr error;
  for (int w = 0; w < workers; ++w) {
    std::size_t lo = std::size_t(w) * chunk;
    std::size_t hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    threads.emplace_back([lo, hi, &body, &error_mutex, &error] {
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace camr
