// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/eval/lineage.hpp"

#include "medforge/common/error.hpp"
#include "medforge/eval/prompt.hpp"

namespace medforge::eval {

translate::TranslationUnit unit_from_item(const BenchmarkItem& english) {
  if (english.language != Language::en) throw InvalidState(english.item_id + " is not an English item");
  english.validate();
  translate::TranslationUnit u;
  u.unit_id = std::string(to_string(english.dataset)) + "/" + english.item_id + "/ar";
  u.source_id = english.item_id;
  if (english.context) u.english_fields.push_back({"context", *english.context});
  u.english_fields.push_back({"question", english.question});
  for (std::size_t i = 0; i < english.options.size(); ++i) {
    u.english_fields.push_back({"option:" + option_letter(i), english.options[i]});
  }
  u.metadata["dataset"] = to_string(english.dataset);
  return u;
}

BenchmarkItem arabic_item_from_unit(const translate::TranslationUnit& unit, const BenchmarkItem& english) {
  const auto expected = unit_from_item(english);
  if (unit.unit_id != expected.unit_id || !translate::same_field_names(expected.english_fields, unit.arabic_fields)) {
    throw AlignmentError("unit " + unit.unit_id + " does not match item " + english.item_id);
  }
  BenchmarkItem ar = english;
  ar.language = Language::ar;
  std::size_t i = 0;
  if (ar.context) ar.context = unit.arabic_fields[i++].text;
  ar.question = unit.arabic_fields[i++].text;
  for (auto& o : ar.options) o = unit.arabic_fields[i++].text;
  ar.validate();
  return ar;
}

}  // namespace medforge::eval
