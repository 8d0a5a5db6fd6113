#pragma once

#include <functional>

namespace conex {

// Worker count for seed-parallel execution: CONEX_WORKERS when set, else the
// hardware concurrency (at least 1).
int worker_count();

// Runs body(0..n-1) across workers. Each index owns its output slot, so
// results are identical to a serial loop regardless of scheduling.
void parallel_for(long n, const std::function<void(long)>& body, int workers = 0);

}  // namespace conex
