// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/common/json.hpp"

namespace medforge::chat {

enum class SourceDataset { PubMedQA, MedQA, MedMCQA, other };

std::string_view to_string(SourceDataset d);
SourceDataset source_dataset_from_string(std::string_view s);

struct Option {
  std::string label;
  std::string text;

  bool operator==(const Option&) const = default;
};

/// A multiple-choice item used to ground synthetic dialogues.
struct McqaItem {
  std::string item_id;
  std::string question;
  std::vector<Option> options;  // 2-5 entries, unique labels
  std::string gold_label;
  std::optional<std::string> context;
  SourceDataset source_dataset = SourceDataset::other;

  /// Throws SchemaError when an invariant does not hold.
  void validate() const;
  std::size_t gold_index() const;

  bool operator==(const McqaItem&) const = default;
};

Json to_json(const McqaItem& item);
McqaItem mcqa_from_json(const Json& j);

}  // namespace medforge::chat
