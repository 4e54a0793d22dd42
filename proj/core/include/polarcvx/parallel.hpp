#pragma once

#include <cstddef>
#include <functional>

namespace polarcvx {

// Worker count: POLARCVX_THREADS when set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
std::size_t worker_count();

// Calls body(i) for i in [0, count) on up to worker_count() threads using a
// static contiguous partition. The first exception (lowest index) is
// rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace polarcvx
