#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rholab {

// Chunked parallel loop with a fixed chunk size, so that any per-chunk
// results can be reduced in chunk order and the outcome does not depend on
// the number of worker threads. Reductions that are exactly associative
// (max) may be merged freely; floating-point sums must go through
// reduce_chunked below to stay bit-stable.

inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1u : n;
}

constexpr std::size_t kDefaultChunk = 1024;

// fn(chunk_index, begin, end)
inline void parallel_chunks(std::size_t n,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                            std::size_t chunk = kDefaultChunk) {
  if (n == 0) return;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  unsigned nthreads = std::min<std::size_t>(worker_count(), nchunks);
  if (nthreads <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      fn(c, c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([=, &fn] {
      for (std::size_t c = t; c < nchunks; c += nthreads)
        fn(c, c * chunk, std::min(n, (c + 1) * chunk));
    });
  }
  for (auto& th : pool) th.join();
}

inline std::size_t chunk_count(std::size_t n, std::size_t chunk = kDefaultChunk) {
  return n == 0 ? 0 : (n + chunk - 1) / chunk;
}

// Deterministic parallel sum: per-chunk partials, merged in chunk order.
inline double reduce_chunked_sum(std::size_t n,
                                 const std::function<double(std::size_t, std::size_t)>& partial,
                                 std::size_t chunk = kDefaultChunk) {
  const std::size_t nchunks = chunk_count(n, chunk);
  std::vector<double> parts(nchunks, 0.0);
  parallel_chunks(n, [&](std::size_t c, std::size_t b, std::size_t e) { parts[c] = partial(b, e); },
                  chunk);
  double s = 0.0;
  for (double p : parts) s += p;
  return s;
}

}  // namespace rholab
