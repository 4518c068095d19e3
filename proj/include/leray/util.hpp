#pragma once

#include <cstddef>
#include <functional>

namespace leray {

// Number of worker threads to use for fan-out, capped by the LERAY_THREADS
// environment variable (default: hardware concurrency, at least 1).
std::size_t thread_cap();

// Runs fn(0..count-1), possibly on several threads.  Results must be written
// to per-index slots; iteration order is unspecified but the set of calls is
// exactly 0..count-1.  The first exception thrown by any task is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace leray
