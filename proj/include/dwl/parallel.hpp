#pragma once

#include <cstddef>
#include <functional>

namespace dwl {

// Worker count: DWL_THREADS if set (>= 1), otherwise hardware concurrency.
int thread_count();

// Splits [0, n) into contiguous chunks and runs body(begin, end) on up to
// `threads` workers. Callers write results per index, so output does not
// depend on the chunking.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body, int threads = 0);

}  // namespace dwl
