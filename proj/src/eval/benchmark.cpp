// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/eval/benchmark.hpp"

#include <map>

#include "medforge/common/error.hpp"
#include "medforge/common/io.hpp"

namespace medforge::eval {

namespace {

struct DatasetInfo {
  Dataset id;
  std::string_view name;
  std::string_view column;
};

constexpr DatasetInfo kInfo[] = {
    {Dataset::MMLU_CliKG, "MMLU_CliKG", "Cli-KG"},   {Dataset::MMLU_CBio, "MMLU_CBio", "C-Bio"},
    {Dataset::MMLU_CMed, "MMLU_CMed", "C-Med"},      {Dataset::MMLU_MedGen, "MMLU_MedGen", "Med-Gen"},
    {Dataset::MMLU_ProMed, "MMLU_ProMed", "Pro-Med"}, {Dataset::MMLU_Ana, "MMLU_Ana", "Ana"},
    {Dataset::MedMCQA, "MedMCQA", "MedMCQA"},        {Dataset::MedQA, "MedQA", "MedQA"},
    {Dataset::PubMedQA, "PubMedQA", "PubmedQA"},
};

}  // namespace

std::string_view to_string(Dataset d) { return kInfo[static_cast<int>(d)].name; }
std::string_view column_label(Dataset d) { return kInfo[static_cast<int>(d)].column; }

Dataset dataset_from_string(std::string_view s) {
  for (const auto& i : kInfo) {
    if (i.name == s) return i.id;
  }
  throw SchemaError(0, "unknown benchmark dataset '" + std::string(s) + "'");
}

bool is_mmlu(Dataset d) { return static_cast<int>(d) <= static_cast<int>(Dataset::MMLU_Ana); }

std::optional<std::size_t> expected_count(Dataset d) {
  switch (d) {
    case Dataset::MedQA: return 1273;
    case Dataset::MedMCQA: return 4183;
    case Dataset::PubMedQA: return 500;
    default: return std::nullopt;
  }
}

void BenchmarkItem::validate() const {
  if (item_id.empty()) throw SchemaError(0, "benchmark item without item_id");
  if (question.empty()) throw SchemaError(0, item_id + ": empty question");
  const std::size_t want = dataset == Dataset::PubMedQA ? 3 : 4;
  if (options.size() != want) {
    throw SchemaError(0, item_id + ": " + std::string(to_string(dataset)) + " items need " +
                             std::to_string(want) + " options, got " + std::to_string(options.size()));
  }
  if (dataset == Dataset::PubMedQA && language == Language::en &&
      (options[0] != "yes" || options[1] != "no" || options[2] != "maybe")) {
    throw SchemaError(0, item_id + ": PubMedQA options must be yes, no, maybe");
  }
  for (const auto& o : options) {
    if (o.empty()) throw SchemaError(0, item_id + ": empty option");
  }
  if (gold_index >= options.size()) throw SchemaError(0, item_id + ": gold_index out of range");
}

Json to_json(const BenchmarkItem& item) {
  Json j = {{"item_id", item.item_id}, {"question", item.question}};
  if (item.context) j["context"] = *item.context;
  j["options"] = item.options;
  j["gold_index"] = item.gold_index;
  return j;
}

BenchmarkItem benchmark_item_from_json(const Json& j, Dataset dataset, Language language,
                                       std::size_t line) {
  BenchmarkItem item;
  item.dataset = dataset;
  item.language = language;
  try {
    item.item_id = j.at("item_id").get<std::string>();
    item.question = j.at("question").get<std::string>();
    if (j.contains("context") && !j["context"].is_null()) item.context = j["context"].get<std::string>();
    item.options = j.at("options").get<std::vector<std::string>>();
    item.gold_index = j.at("gold_index").get<std::size_t>();
  } catch (const Json::exception& e) {
    throw SchemaError(line, e.what());
  }
  try {
    item.validate();
  } catch (const SchemaError& e) {
    throw SchemaError(line, e.what());
  }
  return item;
}

std::vector<BenchmarkItem> load_benchmark(const std::filesystem::path& path, Dataset dataset,
                                          Language language, bool strict) {
  std::vector<BenchmarkItem> items;
  for (const auto& [line, value] : read_jsonl(path)) {
    items.push_back(benchmark_item_from_json(value, dataset, language, line));
  }
  if (strict) {
    if (auto want = expected_count(dataset); want && *want != items.size()) {
      throw CountMismatch(std::string(to_string(dataset)), *want, items.size());
    }
  }
  return items;
}

std::vector<BenchmarkItem> load_suite(const std::filesystem::path& dir, bool strict) {
  if (!std::filesystem::is_directory(dir)) throw IoError("suite directory not found: " + dir.string());
  std::vector<BenchmarkItem> all;
  bool any_language = false;
  for (Language lang : {Language::en, Language::ar}) {
    const auto sub = dir / std::string(corpus::to_string(lang));
    if (!std::filesystem::is_directory(sub)) continue;
    any_language = true;
    std::size_t mmlu = 0;
    for (Dataset d : kAllDatasets) {
      const auto file = sub / (std::string(to_string(d)) + ".jsonl");
      if (!std::filesystem::exists(file)) {
        if (strict && expected_count(d)) throw CountMismatch(std::string(to_string(d)), *expected_count(d), 0);
        continue;
      }
      auto items = load_benchmark(file, d, lang, strict);
      if (is_mmlu(d)) mmlu += items.size();
      all.insert(all.end(), std::make_move_iterator(items.begin()), std::make_move_iterator(items.end()));
    }
    if (strict && mmlu != kMmluTotal) throw CountMismatch("MMLU", kMmluTotal, mmlu);
  }
  if (!any_language) throw IoError("suite has neither en/ nor ar/: " + dir.string());
  return all;
}

void write_suite(const std::filesystem::path& dir, const std::vector<BenchmarkItem>& items) {
  std::map<std::pair<int, int>, std::vector<Json>> files;
  for (const auto& item : items) {
    files[{static_cast<int>(item.language), static_cast<int>(item.dataset)}].push_back(to_json(item));
  }
  for (const auto& [key, records] : files) {
    const auto lang = static_cast<Language>(key.first);
    const auto d = static_cast<Dataset>(key.second);
    const auto sub = dir / std::string(corpus::to_string(lang));
    std::filesystem::create_directories(sub);
    write_jsonl_atomic(sub / (std::string(to_string(d)) + ".jsonl"), records);
  }
}

}  // namespace medforge::eval
