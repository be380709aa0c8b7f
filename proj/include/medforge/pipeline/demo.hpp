// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "medforge/common/json.hpp"

namespace medforge::pipeline {

struct DemoOptions {
  std::uint64_t seed = 7;
  std::filesystem::path out = "demo-out";
  /// Serve every backend call from this log instead of the mocks.
  std::optional<std::filesystem::path> replay_log;
  int threads = 0;  // 0 picks the OpenMP default
};

/// Runs chat synthesis, the translation loop, review, corpus compilation
/// and evaluation against bundled fixtures. Everything outside
/// <out>/logs is a deterministic function of the seed.
Json run_demo(const DemoOptions& options);

/// Artifact directories the demo owns under <out>.
const std::vector<std::string>& demo_artifacts();

}  // namespace medforge::pipeline
