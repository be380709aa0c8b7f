// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "medforge/common/json.hpp"
#include "medforge/corpus/conversation.hpp"

namespace medforge::corpus {

/// "Avg. Turns" counts exchange rounds: |conversations| / 2, so a QA or
/// MCQA sample has 1.00.
struct SliceStats {
  std::size_t samples = 0;
  std::size_t conversation_entries = 0;
  std::size_t tokens = 0;

  double mean_turns() const;
  SliceStats& operator+=(const SliceStats& o);
};

struct DatasetManifest {
  /// Indexed [kind][language] in enum order.
  SliceStats slices[3][2] = {};
  SliceStats by_language[2] = {};
  SliceStats totals;
  std::optional<double> ar_to_en_ratio;
  std::uint64_t rng_seed = 0;
  std::string tokenizer_id;

  const SliceStats& slice(Kind k, Language l) const;
};

DatasetManifest compute_stats(const std::vector<InstructionSample>& corpus,
                              const std::string& tokenizer_id, std::uint64_t rng_seed,
                              int threads = 1);

Json to_json(const DatasetManifest& m);

}  // namespace medforge::corpus
