#pragma once

#include <cstddef>
#include <functional>

namespace weakmult {

/// Resolves a requested thread count: 0 means "use hardware concurrency".
unsigned resolve_thread_count(unsigned requested);

/// Runs fn(i) for every i in [0, count). With threads <= 1 the calls happen
/// inline, in order. With more threads, indices are claimed from a shared
/// counter; callers that need deterministic results must write into
/// per-index slots and merge in index order afterwards.
void parallel_for_index(std::size_t count, unsigned threads,
                        const std::function<void(std::size_t)>& fn);

}  // namespace weakmult
