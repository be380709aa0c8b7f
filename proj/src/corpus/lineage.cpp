// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/corpus/lineage.hpp"

#include "medforge/common/error.hpp"

namespace medforge::corpus {

namespace {

translate::Fields fields_of(const SourceRecord& r) {
  translate::Fields f;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, chat::McqaItem>) {
          if (p.context) f.push_back({"context", *p.context});
          f.push_back({"question", p.question});
          for (const auto& o : p.options) f.push_back({"option:" + o.label, o.text});
        } else if constexpr (std::is_same_v<T, QaPair>) {
          f = {{"question", p.question}, {"answer", p.answer}};
        } else {
          for (std::size_t i = 0; i < p.turns.size(); ++i) {
            f.push_back({"turn:" + std::to_string(i + 1) + ":" + std::string(chat::to_string(p.turns[i].speaker)),
                         p.turns[i].text});
          }
        }
      },
      r.payload);
  return f;
}

}  // namespace

translate::TranslationUnit unit_from_record(const SourceRecord& english) {
  if (english.language != Language::en) throw InvalidState("record " + english.record_id + " is not English");
  translate::TranslationUnit u;
  u.unit_id = english.record_id + "/ar";
  u.source_id = english.record_id;
  u.english_fields = fields_of(english);
  u.metadata["kind"] = to_string(english.kind);
  u.metadata["origin"] = to_string(english.origin);
  return u;
}

SourceRecord arabic_record_from_unit(const translate::TranslationUnit& unit, const SourceRecord& english) {
  const auto expected = fields_of(english);
  if (!translate::same_field_names(expected, unit.english_fields) ||
      !translate::same_field_names(expected, unit.arabic_fields)) {
    throw AlignmentError("unit " + unit.unit_id + " does not match record " + english.record_id);
  }
  const auto& ar = unit.arabic_fields;
  SourceRecord r;
  r.record_id = english.record_id + ":ar";
  r.kind = english.kind;
  r.language = Language::ar;
  r.origin = english.origin;
  r.source_id = english.record_id;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        std::size_t i = 0;
        if constexpr (std::is_same_v<T, chat::McqaItem>) {
          chat::McqaItem item = p;
          item.item_id = r.record_id;
          if (item.context) item.context = ar[i++].text;
          item.question = ar[i++].text;
          for (auto& o : item.options) o.text = ar[i++].text;
          r.payload = std::move(item);
        } else if constexpr (std::is_same_v<T, QaPair>) {
          r.payload = QaPair{ar[0].text, ar[1].text};
        } else {
          chat::ChatTranscript t = p;
          for (auto& turn : t.turns) turn.text = ar[i++].text;
          r.payload = std::move(t);
        }
      },
      english.payload);
  r.validate();
  return r;
}

}  // namespace medforge::corpus
