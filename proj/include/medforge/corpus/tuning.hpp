// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medforge/common/json.hpp"

namespace medforge::corpus {

/// Decoder dimensions used only to report the adapter parameter fraction.
struct ArchitectureDims {
  std::int64_t hidden = 0;
  std::int64_t ffn = 0;
  std::int64_t layers = 0;
  std::int64_t heads = 0;
  std::int64_t kv_heads = 0;
  std::int64_t vocab = 0;
  std::int64_t experts = 1;
};

/// Low-rank adapter fine-tuning recipe. Every field is optional so a
/// partially specified config can be detected; defaults() fills the
/// recipe used for the bilingual medical model.
struct TuningConfig {
  std::optional<int> adapter_rank;
  std::optional<int> adapter_alpha;
  std::optional<std::vector<std::string>> adapter_targets;
  std::optional<int> batch_size;
  std::optional<int> grad_accum_steps;
  std::optional<std::string> optimizer;
  std::optional<double> learning_rate;
  std::optional<std::string> schedule;
  std::optional<int> warmup_steps;
  std::optional<int> epochs;
  std::optional<ArchitectureDims> architecture;

  static TuningConfig defaults();

  /// Applies keys present in `overrides`; a key set to null clears the
  /// field. Unknown keys raise ConfigError.
  TuningConfig overlay(const Json& overrides) const;
};

/// Trainable adapter parameters / base parameters for the given targets.
double adapter_parameter_fraction(const ArchitectureDims& dims, int rank,
                                  const std::vector<std::string>& targets);

/// Manifest JSON with every recipe field, the list of fields that differ
/// from the defaults, and the adapter fraction (null without dims).
/// Throws MissingField.
Json emit_tuning_manifest(const TuningConfig& cfg);

}  // namespace medforge::corpus
