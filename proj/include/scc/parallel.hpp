#pragma once

#include <functional>

#include "scc/volume.hpp"

namespace scc {

/// Worker count from SCC_THREADS (0 or unset = hardware concurrency).
int thread_count();

/// Runs fn(i) for i in [0, n). Each index is processed exactly once; callers
/// write only to index-private outputs so results do not depend on
/// scheduling.
void parallel_for(Index n, std::function<void(Index)> const &fn);

} // namespace scc
