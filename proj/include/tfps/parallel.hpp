#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace tfps {

// Effective worker count: requested, capped by TFPS_WORKERS (if set) and
// hardware concurrency. requested <= 0 means "one worker".
int resolve_workers(int requested);

// Runs f(i) for i in [0, n). Work items must be independent; callers merge
// results by index so the outcome does not depend on scheduling.
void parallel_for(int n, int workers, const std::function<void(int)>& f);

}  // namespace tfps
