#pragma once

#include <cstddef>
#include <functional>

namespace ncfinfer {

/// Worker count: NCF_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned default_threads();

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 means
/// default_threads()). Indices are claimed dynamically; callers write results
/// into per-index slots. After a failure no new indices start; the exception
/// from the lowest failing index is rethrown once all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace ncfinfer
