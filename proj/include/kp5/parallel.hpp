#pragma once

#include <cstddef>
#include <functional>

namespace kp5 {

/// Worker count: KP5_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Run body(chunk) for chunk in [0, chunks) on up to worker_count() threads.
/// Work is split by chunk index, so results that depend only on the chunk are
/// independent of the thread count.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

}  // namespace kp5
