#include "cdg/parallel.hpp"

#include <algorithm>
#include <cassert>
#include <thread>
#include <vector>

namespace cdg {

namespace {
constexpr std::size_t kDotChunk = 4096;
}

ExecutionPolicy ExecutionPolicy::hardware() {
  const unsigned n = std::thread::hardware_concurrency();
  return {n == 0 ? 1 : static_cast<int>(n)};
}

void parallel_for(const ExecutionPolicy& policy, std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  grain = std::max<std::size_t>(grain, 1);
  const std::size_t chunks = (n + grain - 1) / grain;
  const std::size_t workers = std::min<std::size_t>(chunks, static_cast<std::size_t>(std::max(policy.threads, 1)));
  if (workers <= 1) {
    body(0, n);
    return;
  }
  // Static contiguous split; each worker owns a disjoint range.
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t per = (chunks + workers - 1) / workers * grain;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * per;
    const std::size_t end = std::min(n, begin + per);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

double dot(const ExecutionPolicy& policy, std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  const std::size_t n = a.size();
  const std::size_t chunks = (n + kDotChunk - 1) / kDotChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(policy, chunks, 1, [&](std::size_t c0, std::size_t c1) {
    for (std::size_t c = c0; c < c1; ++c) {
      const std::size_t begin = c * kDotChunk;
      const std::size_t end = std::min(n, begin + kDotChunk);
      double s = 0.0;
      for (std::size_t i = begin; i < end; ++i) s += a[i] * b[i];
      partial[c] = s;
    }
  });
  double sum = 0.0;
  for (double p : partial) sum += p;
  return sum;
}

}  // namespace cdg
