#pragma once

#include <cstddef>
#include <functional>

namespace ocd {

// Thread count from OCD_THREADS, else the hardware concurrency (at least 1).
int default_thread_count();

// Calls body(i) for i in [0, count) on up to `threads` workers. Work items
// are claimed dynamically; results must be written to slots indexed by i.
// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace ocd
