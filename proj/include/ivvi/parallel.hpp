#pragma once

#include <cstddef>
#include <functional>

namespace ivvi {

/// Worker count used by parallel_for: IVVI_THREADS if set, else the hardware concurrency.
std::size_t worker_count() noexcept;

/// Runs body(begin, end) over contiguous chunks of [0, n). Chunks are fixed by
/// n and the worker count, so callers that write per-index results get
/// deterministic output. An exception from the lowest failing chunk is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ivvi
