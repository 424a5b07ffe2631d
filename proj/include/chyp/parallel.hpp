#pragma once
// Minimal fork/join helpers. Work is split into fixed chunks and every
// reduction runs in index order, so results do not depend on thread count.

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace chyp {

/// CHYP_THREADS if set (>= 1), else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* s = std::getenv("CHYP_THREADS")) {
    int n = std::atoi(s);
    if (n >= 1) return unsigned(n);
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

/// Calls body(i) for i in [0, n). Each index is handled exactly once.
template <class Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads = worker_count()) {
  threads = std::max(1u, std::min<unsigned>(threads, unsigned(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) body(i);
    });
  for (auto& th : pool) th.join();
}

/// Pairwise sum in a fixed tree shape.
template <class T>
T tree_sum(const T* x, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T s = x[0];
    for (std::size_t i = 1; i < n; ++i) s += x[i];
    return s;
  }
  std::size_t h = n / 2;
  return tree_sum(x, h) + tree_sum(x + h, n - h);
}

template <class T>
T tree_sum(const std::vector<T>& v) {
  return tree_sum(v.data(), v.size());
}

}  // namespace chyp
