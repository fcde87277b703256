#pragma once

#include <cstddef>
#include <functional>

namespace riotwave {

/// Number of worker threads used by parallel_for: hardware concurrency,
/// capped by the RIOTWAVE_THREADS environment variable when set. Always >= 1.
unsigned worker_count();

/// Runs fn(i) for i in [0, n). Work is split into contiguous index blocks,
/// one per worker; each call must only write state owned by index i so the
/// result is independent of the thread count. Exceptions from workers are
/// rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace riotwave
