#pragma once

#include <cstddef>
#include <functional>

namespace hexlift {

/// Worker count: set_thread_count() override, else $HEXLIFT_THREADS, else the
/// hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t threads);  // 0 restores the default

/// Calls body(begin, end) over contiguous chunks of [0, n). Chunks never
/// overlap, so writes indexed by position are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace hexlift
