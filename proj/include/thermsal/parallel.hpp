#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace thermsal {

// THERMSAL_WORKERS, when set and valid, overrides the default worker count.
inline unsigned workers_from_env(unsigned fallback = 1) {
  const char* env = std::getenv("THERMSAL_WORKERS");
  if (!env) return fallback;
  long n = std::strtol(env, nullptr, 10);
  return n >= 1 ? static_cast<unsigned>(n) : fallback;
}

// Runs fn(0..n-1) on up to `workers` threads. Each index is processed exactly
// once; callers own any ordering of side effects (write per-index outputs, or
// merge in canonical order afterwards). The first exception is rethrown.
template <typename Fn>
inline void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(n);  // stop handing out work
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  threads.reserve(count);
  for (unsigned t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace thermsal
