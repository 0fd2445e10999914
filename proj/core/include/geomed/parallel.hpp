#pragma once

#include <cstdint>
#include <functional>

#include "geomed/types.hpp"

namespace geomed {

// Thread budget: `requested` if positive, else the GEOMED_THREADS environment
// variable, else hardware concurrency. Always at least 1.
int resolve_threads(int requested = 0);

// Runs fn(i) for i in [0, n). Results must be written to disjoint,
// index-addressed slots so the outcome is identical for any thread count.
// If several iterations throw, the exception from the lowest index is
// rethrown after all workers join.
void parallel_for(Index n, const std::function<void(Index)>& fn,
                  int threads = 0);

}  // namespace geomed
