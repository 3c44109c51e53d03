#pragma once

#include <cstddef>
#include <functional>

namespace hyplab {

// Runs body(i) for i in [0, n) on up to `threads` workers; body writes to its own slot only.
// threads <= 0 means hardware concurrency.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

int resolve_threads(int threads);

}  // namespace hyplab
