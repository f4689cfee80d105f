#pragma once

#include <cstddef>
#include <functional>

namespace qdl {

/// Worker threads used by internal data-parallel kernels. Defaults to
/// std::thread::hardware_concurrency(); values < 1 are clamped to 1.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Splits [0, n) into at most thread_count() contiguous chunks and calls
/// fn(chunk, begin, end) for each, on separate threads. Chunk ids are dense
/// and ordered by range, so callers can reduce per-chunk results
/// deterministically.
void parallel_chunks(std::size_t n, std::size_t min_chunk,
                     const std::function<void(std::size_t chunk, std::size_t begin, std::size_t end)>& fn);

/// Number of chunks parallel_chunks(n, min_chunk, ...) will use.
std::size_t chunk_count(std::size_t n, std::size_t min_chunk);

}  // namespace qdl
