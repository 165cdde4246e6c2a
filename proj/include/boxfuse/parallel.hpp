#pragma once

#include <cstddef>
#include <functional>

namespace boxfuse {

// Caps worker threads for every parallel_for in the process. n < 1 is clamped
// to 1. Default is the hardware concurrency.
void set_max_threads(int n);
int max_threads();

// Runs fn(0) .. fn(count-1), possibly on several threads. Each index is
// executed exactly once; callers write results into per-index slots, so the
// outcome is independent of the thread count. fn must not throw.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace boxfuse
