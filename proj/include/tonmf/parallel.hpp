#pragma once

#include <cstdint>
#include <thread>
#include <utility>
#include <vector>

namespace tonmf {

// Runs fn(i) for i in [0, count) over at most `threads` workers. Every index
// must write only its own output slots; results are then independent of the
// thread count and chunking.
template <typename F>
void parallel_for(std::int64_t count, int threads, F&& fn) {
  if (count <= 0) return;
  std::int64_t workers = threads;
  if (workers > count) workers = count;
  if (workers <= 1 || count < 64) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (count + workers - 1) / workers;
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t begin = w * chunk;
    const std::int64_t end = begin + chunk < count ? begin + chunk : count;
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::int64_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace tonmf
