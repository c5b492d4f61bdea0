#pragma once

#include <cstddef>
#include <functional>

namespace hetdiff {

/// Number of worker threads to use. Honors the HETDIFF_THREADS
/// environment variable (clamped to [1, hardware_concurrency]);
/// defaults to the hardware concurrency.
unsigned thread_count();

/// Run fn(i) for i in [0, n). Iterations must be independent; they are
/// distributed over thread_count() workers (serial when that is 1).
/// Exceptions thrown by fn are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace hetdiff
