#pragma once

// Minimal deterministic work partitioning. Results must go into
// preallocated slots indexed by task id; only scheduling is concurrent.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace emt {

/// EMT_JOBS override, else the logical core count, else 1.
inline int default_jobs() {
  if (const char* env = std::getenv("EMT_JOBS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs task(i) for every 0 <= i < count on at most `jobs` threads.
/// Tasks must not throw and must write only to their own slots.
inline void run_partitioned(std::int64_t count, int jobs,
                            const std::function<void(std::int64_t)>& task) {
  if (count <= 0) return;
  jobs = static_cast<int>(std::max<std::int64_t>(
      1, std::min<std::int64_t>(jobs, count)));
  if (jobs == 1) {
    for (std::int64_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(jobs));
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        task(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace emt
