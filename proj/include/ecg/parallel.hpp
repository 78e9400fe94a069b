#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ecg {

// Worker cap: explicit override first, then the ECG_THREADS environment
// variable, else 1. Parallel sections stay deterministic: every task writes
// only its own index.
inline std::size_t& worker_override() {
  static std::size_t value = 0;  // 0: no override
  return value;
}

inline void set_worker_threads(std::size_t n) { worker_override() = n; }

inline std::size_t worker_threads() {
  if (worker_override() != 0) return worker_override();
  if (const char* env = std::getenv("ECG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

// Runs fn(i) for i in [0, count) across at most worker_threads() threads.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::min(worker_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ecg
