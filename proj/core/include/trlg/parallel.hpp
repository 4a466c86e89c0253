#pragma once

#include <cstddef>
#include <functional>

namespace trlg {

// Process-wide worker cap for parallel_for. Every parallel site writes to
// disjoint slots keyed by index and reduces in index order, so results are
// bit-identical for any thread count.
void set_thread_count(int n);
int thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace trlg
