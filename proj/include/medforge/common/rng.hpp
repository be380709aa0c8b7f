// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace medforge {

/// Seeded generator whose outputs are identical on every platform.
/// std::mt19937_64 is fully specified by the standard but the std
/// distributions are not, so index and real draws are done here.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::mt19937_64 engine_;
};

/// Chooses k distinct indices out of [0, n) by a seeded partial
/// Fisher-Yates shuffle. Returned in ascending order.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed);

/// Seeded full shuffle of [0, n).
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

}  // namespace medforge
