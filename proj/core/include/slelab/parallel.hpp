#ifndef SLELAB_PARALLEL_HPP
#define SLELAB_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace slelab::mc {

/// Worker count: SLELAB_WORKERS env var, else hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("SLELAB_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

/**
 * Run `n_chunks` independent chunks on `workers` threads.
 *
 * fn(chunk_index) must write only chunk-local state (typically a per-chunk
 * result slot and a RandomStream derived from the chunk index).  Because the
 * chunk -> stream mapping is fixed and results are merged in chunk order by
 * the caller, output is independent of the worker count.
 */
inline void parallel_chunks(std::size_t n_chunks, int workers,
                            const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      std::size_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      fn(c);
    }
  };
  std::vector<std::thread> pool;
  int n = workers < static_cast<int>(n_chunks) ? workers
                                               : static_cast<int>(n_chunks);
  pool.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool.emplace_back(body);
  for (auto& th : pool) th.join();
}

}  // namespace slelab::mc

#endif
