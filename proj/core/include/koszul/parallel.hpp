#pragma once

#include <cstddef>
#include <functional>

namespace koszul {

// Worker count: KOSZUL_RANK_THREADS if set to a positive integer, otherwise
// the hardware concurrency (at least 1).
std::size_t thread_budget();

// Runs body(i) for i in [0, count). Work is handed out by index, so any
// per-index result written by body is independent of the thread count.
// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace koszul
