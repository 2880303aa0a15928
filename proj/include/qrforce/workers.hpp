#pragma once

#include <cstddef>
#include <functional>

namespace qrf {

// Worker count from QRF_WORKERS, defaulting to the hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n) on a bounded pool; exceptions propagate from
// the lowest failing index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body,
                  unsigned workers = 0);

} // namespace qrf
