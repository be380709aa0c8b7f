// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

#include <omp.h>

namespace medforge {

/// Serial reference for parallel_for: calls fn(i) for i in [0, n) in order.
template <class Fn>
void serial_for(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

/// OpenMP loop over independent items. Each index is visited exactly once;
/// results must be written to per-index slots so output order never depends
/// on scheduling. The first exception thrown by any iteration is rethrown
/// after the loop; remaining iterations still run.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (threads <= 1 || n <= 1) {
    serial_for(n, std::forward<Fn>(fn));
    return;
  }
  std::exception_ptr first;
  std::mutex mu;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(mu);
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

inline int default_threads() { return omp_get_max_threads(); }

}  // namespace medforge
