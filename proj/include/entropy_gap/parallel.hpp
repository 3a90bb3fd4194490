#pragma once

#include <cstddef>
#include <functional>

namespace entropy_gap {

/// Workers to use: ENTROPY_GAP_THREADS when set and positive, else the
/// hardware concurrency (at least 1).
std::size_t default_worker_count();

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Callers write
/// results into slot i, so output order never depends on scheduling. The
/// first exception thrown by fn is rethrown after all workers join.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& fn);

}  // namespace entropy_gap
