#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace cdg {

/// Controls how element loops and vector kernels are executed.
///
/// Every kernel in the library partitions work into fixed-size chunks and
/// reduces chunk partials in chunk order, so results are bit-identical for
/// any thread count. `threads == 1` is the sequential reference mode.
struct ExecutionPolicy {
  int threads = 1;

  static ExecutionPolicy sequential() { return {1}; }
  /// Uses std::thread::hardware_concurrency().
  static ExecutionPolicy hardware();

  bool is_sequential() const { return threads <= 1; }
};

/// Calls `body(begin, end)` over consecutive ranges covering [0, n).
void parallel_for(const ExecutionPolicy& policy, std::size_t n, std::size_t grain,
                  const std::function<void(std::size_t, std::size_t)>& body);

/// Dot product with a fixed chunked reduction order.
double dot(const ExecutionPolicy& policy, std::span<const double> a, std::span<const double> b);

}  // namespace cdg
