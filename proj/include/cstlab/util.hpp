#pragma once

#include <complex>
#include <cstdlib>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace cstlab {

// Pairwise (tree) summation over a fixed node order. Gives run-to-run
// bitwise reproducible reductions independent of accumulation drift.
template <typename T>
T pairwise_sum(std::span<const T> v) {
  const std::size_t n = v.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = v[0];
    for (std::size_t i = 1; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v.data(), v.size()));
}

// Thread budget: min(hardware, CSTLAB_THREADS if set).
inline unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("CSTLAB_THREADS")) {
    const long cap = std::atol(env);
    if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
  }
  return hw;
}

// Index-parallel map over [0, n). Each index writes only its own slot in the
// caller's output, so the result does not depend on the schedule.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned nt = thread_budget();
  if (nt <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += nt) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// 17-significant-digit text form, round-trip safe for doubles.
inline std::string fp17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace cstlab
