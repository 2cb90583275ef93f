#include "rrscore/numeric.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace rrscore {

unsigned effective_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_chunks(std::uint64_t chunk_count, unsigned threads,
                     const std::function<void(std::uint64_t)>& fn) {
  threads = effective_threads(threads);
  if (threads <= 1 || chunk_count <= 1) {
    for (std::uint64_t c = 0; c < chunk_count; ++c) fn(c);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunk_count) return;
      fn(c);
    }
  };
  std::vector<std::thread> pool;
  unsigned spawn = threads < chunk_count ? threads : static_cast<unsigned>(chunk_count);
  pool.reserve(spawn);
  for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace rrscore
