// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/chat/mcqa.hpp"

#include <set>

#include "medforge/common/error.hpp"

namespace medforge::chat {

std::string_view to_string(SourceDataset d) {
  switch (d) {
    case SourceDataset::PubMedQA: return "PubMedQA";
    case SourceDataset::MedQA: return "MedQA";
    case SourceDataset::MedMCQA: return "MedMCQA";
    case SourceDataset::other: return "other";
  }
  return "other";
}

SourceDataset source_dataset_from_string(std::string_view s) {
  if (s == "PubMedQA") return SourceDataset::PubMedQA;
  if (s == "MedQA") return SourceDataset::MedQA;
  if (s == "MedMCQA") return SourceDataset::MedMCQA;
  return SourceDataset::other;
}

void McqaItem::validate() const {
  if (item_id.empty()) throw SchemaError(0, "MCQA item has no id");
  if (question.empty()) throw SchemaError(0, "MCQA item " + item_id + " has no question");
  if (options.size() < 2 || options.size() > 5) {
    throw SchemaError(0, "MCQA item " + item_id + " must have 2-5 options, has " +
                             std::to_string(options.size()));
  }
  std::set<std::string> labels;
  for (const auto& o : options) {
    if (o.label.empty() || o.text.empty()) throw SchemaError(0, "MCQA item " + item_id + " has an empty option");
    if (!labels.insert(o.label).second) throw SchemaError(0, "MCQA item " + item_id + " repeats label " + o.label);
  }
  if (!labels.contains(gold_label)) {
    throw SchemaError(0, "MCQA item " + item_id + ": gold label '" + gold_label + "' is not an option");
  }
}

std::size_t McqaItem::gold_index() const {
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (options[i].label == gold_label) return i;
  }
  throw SchemaError(0, "MCQA item " + item_id + ": gold label not found");
}

Json to_json(const McqaItem& item) {
  Json options = Json::array();
  for (const auto& o : item.options) options.push_back({{"label", o.label}, {"text", o.text}});
  Json j = {{"item_id", item.item_id}, {"question", item.question}, {"options", std::move(options)},
            {"gold_label", item.gold_label}};
  if (item.context) j["context"] = *item.context;
  j["source_dataset"] = to_string(item.source_dataset);
  return j;
}

McqaItem mcqa_from_json(const Json& j) {
  try {
    McqaItem item;
    item.item_id = j.at("item_id").get<std::string>();
    item.question = j.at("question").get<std::string>();
    for (const auto& o : j.at("options")) {
      item.options.push_back({o.at("label").get<std::string>(), o.at("text").get<std::string>()});
    }
    item.gold_label = j.at("gold_label").get<std::string>();
    if (j.contains("context") && j["context"].is_string()) item.context = j["context"].get<std::string>();
    item.source_dataset = source_dataset_from_string(j.value("source_dataset", "other"));
    item.validate();
    return item;
  } catch (const Json::exception& e) {
    throw SchemaError(0, std::string("bad MCQA item: ") + e.what());
  }
}

}  // namespace medforge::chat
