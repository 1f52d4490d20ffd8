#pragma once

#include <cstddef>
#include <functional>

namespace community_forge {

/// Worker count: COMMUNITY_FORGE_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker threads. Each index is handled
/// exactly once, so callers that write only to slot i get results that do not
/// depend on scheduling. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace community_forge
