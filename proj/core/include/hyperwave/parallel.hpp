#pragma once

#include <cstddef>
#include <functional>

namespace hyperwave {

/// Worker count: HYPERWAVE_THREADS if set (>= 1), else hardware concurrency.
unsigned worker_count();

/// Runs body(chunk_begin, chunk_end, chunk_index) over [0, n) split into
/// `chunks` contiguous chunks whose boundaries depend only on n and chunks,
/// never on the worker count. Callers reduce per-chunk partials in chunk
/// order, which keeps every result bit-identical across thread counts.
void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

/// Plain parallel loop for independent per-index work.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hyperwave
