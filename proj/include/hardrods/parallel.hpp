#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace hardrods::detail {

// Worker count: HARDRODS_THREADS overrides hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("HARDRODS_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1u;
}

// Runs body(begin, end, worker_index) over contiguous chunks of [0, n).
// Callers write to disjoint index ranges, so assembly order is
// deterministic regardless of scheduling.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  unsigned workers = thread_count();
  if (workers <= 1 || n < 2) {
    body(std::size_t{0}, n, 0u);
    return;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 1; w < workers; ++w) {
    std::size_t b = w * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, b, e, w] { body(b, e, w); });
  }
  body(std::size_t{0}, std::min(n, chunk), 0u);
  for (auto& t : pool) t.join();
}

}  // namespace hardrods::detail
