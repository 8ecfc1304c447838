#pragma once

#include <cstddef>
#include <functional>

namespace cvqkd {

// Resolves the worker count: explicit request > CVQKD_THREADS > hardware
// concurrency. Always returns at least 1.
int resolve_threads(int requested);

// Runs fn(i) for every i in [0, count). Work is split into contiguous index
// ranges, one per worker; results must be keyed by index so the outcome is
// independent of the thread count. threads <= 1 runs serially on the caller.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace cvqkd
