#pragma once

#include <cstddef>
#include <functional>

namespace tetralab {

/// Worker count: TETRALAB_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Override for tests and the Python bindings; 0 restores the default.
void set_thread_count(unsigned n);

/// Runs body(i) for i in [0, n). Each index must write only its own output
/// slot, so results do not depend on the number of workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tetralab
