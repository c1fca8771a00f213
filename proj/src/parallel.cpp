#include "decaylab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace decaylab {

namespace {
std::atomic<unsigned> g_workers{1};
constexpr std::size_t kMinBlock = 4096;
}  // namespace

void set_worker_count(unsigned jobs) { g_workers.store(std::max(1u, jobs)); }

unsigned worker_count() { return g_workers.load(); }

void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  const unsigned workers = worker_count();
  if (workers <= 1 || count < 2 * kMinBlock) {
    body(0, count);
    return;
  }
  const std::size_t blocks =
      std::min<std::size_t>(workers, (count + kMinBlock - 1) / kMinBlock);
  const std::size_t chunk = (count + blocks - 1) / blocks;
  std::vector<std::jthread> pool;
  pool.reserve(blocks - 1);
  for (std::size_t b = 1; b < blocks; ++b) {
    const std::size_t lo = b * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo < hi) pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  body(0, std::min(count, chunk));
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 32;
  if (values.size() <= kLeaf) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  // Split at a power of two so the tree shape depends only on the length.
  std::size_t half = 1;
  while (half * 2 < values.size()) half *= 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace decaylab
