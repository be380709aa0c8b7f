// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "medforge/common/json.hpp"
#include "medforge/eval/benchmark.hpp"
#include "medforge/eval/prompt.hpp"
#include "medforge/gateway/gateway.hpp"

namespace medforge::eval {

enum class ScoringMode { extract, logprob };

std::string_view to_string(ScoringMode m);
ScoringMode scoring_mode_from_string(std::string_view s);

struct EvalOptions {
  ScoringMode mode = ScoringMode::extract;
  /// Abort on the first backend error instead of marking the item Unscored.
  bool strict = false;
  int threads = 1;
  EvalTemplates templates = EvalTemplates::defaults();
};

struct Prediction {
  std::string item_id;
  Dataset dataset = Dataset::MedQA;
  Language language = Language::en;
  ScoringMode mode = ScoringMode::extract;
  std::string raw_completion;
  std::optional<std::size_t> extracted_index;
  bool correct = false;
  bool scored = true;
  std::string error;

  bool operator==(const Prediction&) const = default;
};

Json to_json(const Prediction& p);
Prediction prediction_from_json(const Json& j);

struct ColumnResult {
  std::size_t correct = 0;
  std::size_t total = 0;  // scored items
  std::size_t unparsed = 0;
  std::size_t unscored = 0;

  double accuracy() const;
  ColumnResult& operator+=(const ColumnResult& o);
};

/// One row of column values; nullopt marks an absent column.
using Row = std::array<std::optional<double>, kColumns>;

/// Equal-weight mean over the columns present. 0 for an empty row.
double row_average(const Row& row);

struct EvalReport {
  std::string model_tag;
  std::string scoring_mode;
  /// [language][column]
  std::array<std::array<ColumnResult, kColumns>, 2> columns{};
  std::size_t unscored = 0;

  bool has_language(Language l) const;
  ColumnResult bilingual(Dataset d) const;
  /// Accuracy in [0,1]; no language means the bilingual union.
  Row row(std::optional<Language> language) const;
  double avg(std::optional<Language> language) const;
};

EvalReport aggregate(const std::vector<Prediction>& predictions, std::string model_tag);

Prediction predict(const BenchmarkItem& item, gateway::Gateway& gw, const EvalOptions& opts);

struct EvalRun {
  std::vector<Prediction> predictions;  // parallel to items
  EvalReport report;
};

/// Items are queried in parallel; predictions keep the input order.
EvalRun evaluate(const std::vector<BenchmarkItem>& items, gateway::Gateway& gw,
                 const EvalOptions& opts, std::string model_tag);
EvalRun evaluate_serial(const std::vector<BenchmarkItem>& items, gateway::Gateway& gw,
                        const EvalOptions& opts, std::string model_tag);

Json to_json(const EvalReport& report);

struct ReferenceRow {
  std::string label;
  Row percent;  // values already in percent
};

/// Markdown table; report rows are rendered as percentages to one decimal.
std::string render_report(const EvalReport& report,
                          const std::vector<ReferenceRow>& reference_rows = {});
std::string render_rows(const std::vector<ReferenceRow>& rows);

}  // namespace medforge::eval
