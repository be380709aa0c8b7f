// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "medforge/eval/benchmark.hpp"
#include "medforge/gateway/mock_backend.hpp"

namespace medforge::eval {

/// Answers every item with its gold letter; option scores favour gold.
std::shared_ptr<gateway::Backend> gold_oracle(const std::vector<BenchmarkItem>& items);

/// Always answers the option at `index`.
std::shared_ptr<gateway::Backend> constant_oracle(const std::vector<BenchmarkItem>& items,
                                                  std::size_t index);

/// Uniform over each item's options, keyed on (seed, request tag) so the
/// answers do not depend on scheduling.
std::shared_ptr<gateway::Backend> random_oracle(const std::vector<BenchmarkItem>& items,
                                                std::uint64_t seed);

}  // namespace medforge::eval
