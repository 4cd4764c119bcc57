#pragma once

#include <cstddef>
#include <functional>

namespace stablereg {

/// Worker cap for internal parallelism: STABLEREG_THREADS when set to a
/// positive integer, otherwise the hardware concurrency (at least 1).
unsigned thread_budget();

/// Runs fn(0..n-1) across up to thread_budget() workers. Falls back to the
/// calling thread when n <= 1 or the budget is 1. fn must be safe to invoke
/// concurrently for distinct indices.
void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace stablereg
