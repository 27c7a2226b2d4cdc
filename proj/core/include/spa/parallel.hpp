#pragma once

#include <cstddef>
#include <functional>

namespace spa {

/// Worker count: SPA_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Calls body(begin, end, worker) on contiguous chunks of [0, count), one chunk
/// per worker. Chunk boundaries depend only on count and worker count.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t, unsigned)>& body);

}  // namespace spa
