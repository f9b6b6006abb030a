#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace geoflow {

/// Thread cap for sample scans: GEOFLOW_THREADS if set, else hardware count.
inline unsigned scan_threads() {
  if (const char* env = std::getenv("GEOFLOW_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Runs body(i) for i in [0, count). Results must be written into
/// index-addressed slots by the body; aggregation order is then deterministic
/// regardless of the thread count.
inline void parallel_for(int count, const std::function<void(int)>& body) {
  unsigned nthreads = std::min<unsigned>(scan_threads(), count > 0 ? count : 1);
  if (nthreads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    workers.emplace_back([&, t]() {
      for (int i = static_cast<int>(t); i < count; i += static_cast<int>(nthreads)) body(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace geoflow
