#pragma once

#include <cstddef>
#include <functional>

namespace qscatter {

// Number of worker threads sweeps may use: hardware concurrency, capped by the
// QSCATTER_THREADS environment variable when it is set to a positive integer.
int sweep_thread_count();

// Runs fn(i) for i in [0, n) on up to sweep_thread_count() threads. Work items
// must be independent; results should be written into per-index slots so the
// outcome is identical for any thread count. Exceptions are captured and the
// first one rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qscatter
