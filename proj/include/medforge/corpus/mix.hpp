// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/corpus/conversation.hpp"
#include "medforge/corpus/tokenizer.hpp"

namespace medforge::corpus {

enum class RatioMode { samples, tokens };

struct MixOptions {
  /// Target Arabic:English ratio, 0.5 for "1:2".
  double target_ratio = 0.5;
  /// Absolute tolerance on the achieved ratio.
  double tolerance = 0.01;
  bool downsample = true;
  std::uint64_t seed = 0;
  RatioMode mode = RatioMode::samples;
  std::string tokenizer_id = std::string(kDefaultTokenizer);
};

struct MixResult {
  std::vector<InstructionSample> corpus;
  std::optional<double> achieved_ratio;
  std::size_t en_kept = 0;
  std::size_t ar_kept = 0;
  std::size_t en_dropped = 0;
  std::size_t ar_dropped = 0;
};

/// Parses "ar:en" such as "1:2" into 0.5. Throws ConfigError.
double parse_ratio(std::string_view text);

/// Unions both languages at the target ratio. When the supplied ratio is
/// off by more than the tolerance, the over-represented language is
/// downsampled with seeded sampling (kept samples retain input order); the
/// union is then shuffled with the same seed. Throws RatioUnreachable when
/// downsampling is disabled or cannot meet the tolerance.
MixResult mix_bilingual(std::vector<InstructionSample> en, std::vector<InstructionSample> ar,
                        const MixOptions& options);

}  // namespace medforge::corpus
