#pragma once

#include <cstddef>
#include <functional>

namespace manakov {

/// Worker count: MANAKOV_THREADS if set (>= 1), else hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Runs f(i) for i in [0, n). Each index is independent, so results do not
/// depend on the number of workers. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace manakov
