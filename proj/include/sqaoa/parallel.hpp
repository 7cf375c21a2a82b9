#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace sqaoa {

namespace detail {
inline std::atomic<int> g_thread_cap{0}; // 0 = pick from hardware
}

// Worker cap shared by all parallel loops (set from --threads / SQAOA_THREADS).
inline void set_thread_count(int n) { detail::g_thread_cap.store(n < 0 ? 0 : n); }

inline int thread_count() {
  int cap = detail::g_thread_cap.load();
  if (cap > 0) return cap;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [begin,end) into fixed-size chunks and runs fn(chunk_begin, chunk_end)
// on up to thread_count() workers. Chunk boundaries depend only on the range,
// never on the worker count, so per-chunk work (including any floating-point
// accumulation kept per chunk) is identical no matter how many threads run.
template <typename Fn>
void parallel_chunks(uint64_t begin, uint64_t end, uint64_t chunk, Fn&& fn) {
  if (end <= begin) return;
  const int workers = thread_count();
  if (workers <= 1 || end - begin <= chunk) {
    for (uint64_t b = begin; b < end; b += chunk) fn(b, std::min(end, b + chunk));
    return;
  }
  std::atomic<uint64_t> cursor{begin};
  auto body = [&] {
    for (;;) {
      uint64_t b = cursor.fetch_add(chunk);
      if (b >= end) break;
      fn(b, std::min(end, b + chunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
}

// Indexed task loop: fn(i) for i in [0,count), tasks independent.
template <typename Fn>
void parallel_indexed(uint64_t count, Fn&& fn) {
  parallel_chunks(0, count, 1, [&](uint64_t b, uint64_t e) {
    for (uint64_t i = b; i < e; ++i) fn(i);
  });
}

} // namespace sqaoa
