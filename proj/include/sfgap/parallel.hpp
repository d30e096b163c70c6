#pragma once

#include <cstddef>
#include <functional>

namespace sfgap {

// Number of worker threads for the embarrassingly parallel oracle loops:
// hardware concurrency capped by the SFGAP_THREADS environment variable.
std::size_t thread_cap();

// Runs body(i) for i in [0, n). Each index writes only its own output slot,
// so results are identical for any thread count. Exceptions from workers are
// rethrown on the calling thread (first index wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace sfgap
