#pragma once

// Deterministic fan-out over independent work items.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace wallcross {

/// Worker count: hardware concurrency, capped by WALLCROSS_THREADS when set.
inline unsigned max_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("WALLCROSS_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (...) {
    }
  }
  return n;
}

/// Calls body(i) for i in [0, count). Items must be independent; results
/// should be written to slot i so the merge order does not depend on timing.
inline void parallel_for(int count, const std::function<void(int)>& body) {
  const unsigned threads = std::min<unsigned>(max_threads(), static_cast<unsigned>(std::max(count, 0)));
  if (threads <= 1 || count < 64) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = static_cast<int>(t); i < count; i += static_cast<int>(threads)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace wallcross
