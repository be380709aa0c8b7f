// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/common/json.hpp"
#include "medforge/corpus/records.hpp"

namespace medforge::eval {

using corpus::Language;

/// Declaration order is the report column order.
enum class Dataset {
  MMLU_CliKG,
  MMLU_CBio,
  MMLU_CMed,
  MMLU_MedGen,
  MMLU_ProMed,
  MMLU_Ana,
  MedMCQA,
  MedQA,
  PubMedQA
};

inline constexpr std::size_t kColumns = 9;
inline constexpr std::array<Dataset, kColumns> kAllDatasets = {
    Dataset::MMLU_CliKG, Dataset::MMLU_CBio, Dataset::MMLU_CMed,
    Dataset::MMLU_MedGen, Dataset::MMLU_ProMed, Dataset::MMLU_Ana,
    Dataset::MedMCQA,    Dataset::MedQA,     Dataset::PubMedQA};

std::string_view to_string(Dataset d);
Dataset dataset_from_string(std::string_view s);
std::string_view column_label(Dataset d);
bool is_mmlu(Dataset d);

/// Test-split sizes enforced in strict mode. MMLU subsets are only
/// checked as a group.
std::optional<std::size_t> expected_count(Dataset d);
inline constexpr std::size_t kMmluTotal = 1089;

struct BenchmarkItem {
  std::string item_id;
  Dataset dataset = Dataset::MedQA;
  Language language = Language::en;
  std::string question;
  std::optional<std::string> context;
  std::vector<std::string> options;
  std::size_t gold_index = 0;

  /// Throws SchemaError.
  void validate() const;

  bool operator==(const BenchmarkItem&) const = default;
};

/// Line schema: {"item_id", "question", "context"?, "options": [...], "gold_index"}.
Json to_json(const BenchmarkItem& item);
BenchmarkItem benchmark_item_from_json(const Json& j, Dataset dataset, Language language,
                                       std::size_t line = 0);

std::vector<BenchmarkItem> load_benchmark(const std::filesystem::path& path, Dataset dataset,
                                          Language language, bool strict = false);

/// Reads <dir>/<en|ar>/<Dataset>.jsonl for whatever files exist. In strict
/// mode every language directory present must hold complete MedQA,
/// MedMCQA and PubMedQA splits and 1089 MMLU items in total.
std::vector<BenchmarkItem> load_suite(const std::filesystem::path& dir, bool strict = false);

void write_suite(const std::filesystem::path& dir, const std::vector<BenchmarkItem>& items);

}  // namespace medforge::eval
