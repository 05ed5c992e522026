#pragma once

#include <cstddef>
#include <functional>

namespace qpwh {

// Worker count from the QPWH_WORKERS environment variable, else the hardware concurrency (at least 1).
int worker_count_from_env();

// Calls fn(i) for i in [0, n) across `workers` threads. fn must not throw;
// each index is handled exactly once, so per-index output slots stay deterministic.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

} // namespace qpwh
