#ifndef SURVIVAL_THREADS_HPP
#define SURVIVAL_THREADS_HPP

#include <cstddef>
#include <functional>

namespace survival {

// Number of worker threads: min(hardware, SURVIVAL_THREADS env var if set).
int thread_budget();

// Runs fn(i) for i in [0, n). Work items must be independent; each index is
// computed exactly once, so results are identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace survival

#endif
