// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "medforge/common/json.hpp"

namespace medforge::pipeline {

std::string config_hash(const Json& config);

/// Block embedded in every JSON artifact: {config_hash, seed, threshold, ...}.
Json provenance_stamp(const Json& config);

/// Writes <dir>/provenance.json listing the config, its hash and the
/// sha256 of every file under `dir` except those under logs/.
void write_provenance(const std::filesystem::path& dir, const Json& config);

struct VerifyResult {
  std::size_t files_checked = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

VerifyResult verify_provenance(const std::filesystem::path& dir);

}  // namespace medforge::pipeline
