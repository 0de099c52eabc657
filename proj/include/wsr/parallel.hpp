// SPDX-License-Identifier: Apache-2.0
#ifndef WSR_PARALLEL_HPP
#define WSR_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace wsr {

// Worker count: WSRES_THREADS when set, hardware concurrency otherwise.
int worker_count();
void set_worker_count(int n);

// Runs fn(i) for i in [0, n) on the worker pool.  Results must be written to
// per-index slots so the output is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace wsr

#endif  // WSR_PARALLEL_HPP
