#include "qdl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace qdl {

namespace {

std::atomic<std::size_t>& configured_threads() {
  static std::atomic<std::size_t> n{std::max<std::size_t>(1, std::thread::hardware_concurrency())};
  return n;
}

}  // namespace

std::size_t thread_count() { return configured_threads().load(); }

void set_thread_count(std::size_t n) { configured_threads().store(std::max<std::size_t>(1, n)); }

std::size_t chunk_count(std::size_t n, std::size_t min_chunk) {
  if (n == 0) return 0;
  min_chunk = std::max<std::size_t>(1, min_chunk);
  const std::size_t by_size = (n + min_chunk - 1) / min_chunk;
  return std::max<std::size_t>(1, std::min(thread_count(), by_size));
}

void parallel_chunks(std::size_t n, std::size_t min_chunk,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
  const std::size_t chunks = chunk_count(n, min_chunk);
  if (chunks == 0) return;
  if (chunks == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    auto run = [&](std::size_t c) {
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      try {
        fn(c, begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    };
    for (std::size_t c = 1; c < chunks; ++c) workers.emplace_back(run, c);
    run(0);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace qdl
