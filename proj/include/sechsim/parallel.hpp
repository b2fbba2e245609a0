#pragma once
#include <cstddef>
#include <functional>

namespace sechsim {

// Runs fn(i) for i in [0, n) across a thread pool. Callers write results by
// index, so output ordering never depends on scheduling; with identical inputs
// the artifacts come out bit-identical at any thread count. threads <= 0 uses
// the hardware count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

} // namespace sechsim
