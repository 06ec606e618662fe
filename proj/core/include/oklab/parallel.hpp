#pragma once

#include <cstddef>
#include <functional>

namespace oklab {

// Worker count for independent evaluations; 1 (the default) runs inline.
void set_thread_count(unsigned count);
unsigned thread_count();

// Calls body(i) for i in [0, n) across thread_count() workers. The first
// exception thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace oklab
