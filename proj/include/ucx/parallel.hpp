#pragma once

#include <cstddef>
#include <functional>

namespace ucx {

/// Worker count: UCX_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Iterations must only write to their own
/// slot of any shared output; the schedule never affects results.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ucx
