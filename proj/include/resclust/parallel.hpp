#pragma once

#include <cstddef>
#include <functional>

namespace resclust {

/// Worker budget: RC_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
std::size_t thread_budget();

/// Runs body(i) for i in [begin, end), split into contiguous chunks across
/// at most thread_budget() threads. Falls back to a plain loop when the range
/// is shorter than `min_per_thread` per worker.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body,
                  std::size_t min_per_thread = 64);

}  // namespace resclust
