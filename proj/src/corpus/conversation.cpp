// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/corpus/conversation.hpp"

#include "medforge/common/error.hpp"

namespace medforge::corpus {

namespace {

constexpr std::string_view kContextLabel = "Context: ";

std::string mcqa_prompt(const chat::McqaItem& item) {
  std::string out;
  if (item.context) out += std::string(kContextLabel) + *item.context + "\n\n";
  out += item.question;
  out += "\n\n";
  for (std::size_t i = 0; i < item.options.size(); ++i) {
    if (i > 0) out += '\n';
    out += item.options[i].label + ". " + item.options[i].text;
  }
  return out;
}

std::string mcqa_answer(const chat::McqaItem& item) {
  const auto& gold = item.options[item.gold_index()];
  return gold.label + ". " + gold.text;
}

/// Splits "X. text" into ("X", "text").
std::pair<std::string, std::string> split_option(std::string_view line) {
  auto dot = line.find(". ");
  if (dot == std::string_view::npos || dot == 0) throw SchemaError(0, "malformed option line: " + std::string(line));
  return {std::string(line.substr(0, dot)), std::string(line.substr(dot + 2))};
}

chat::McqaItem parse_mcqa_turns(const InstructionSample& s) {
  if (s.conversations.size() != 2) throw SchemaError(0, "MCQA sample must have two turns");
  const std::string& human = s.conversations[0].value;
  auto block = human.rfind("\n\n");
  if (block == std::string::npos) throw SchemaError(0, "MCQA prompt has no option block");

  chat::McqaItem item;
  item.item_id = s.source_id.empty() ? s.record_id : s.source_id;
  std::string head = human.substr(0, block);
  std::string_view options = std::string_view(human).substr(block + 2);
  while (!options.empty()) {
    auto nl = options.find('\n');
    auto [label, text] = split_option(options.substr(0, nl));
    item.options.push_back({label, text});
    if (nl == std::string_view::npos) break;
    options.remove_prefix(nl + 1);
  }
  if (head.starts_with(kContextLabel)) {
    auto split = head.rfind("\n\n");
    if (split == std::string::npos) throw SchemaError(0, "MCQA context without question");
    item.context = head.substr(kContextLabel.size(), split - kContextLabel.size());
    item.question = head.substr(split + 2);
  } else {
    item.question = head;
  }
  item.gold_label = split_option(s.conversations[1].value).first;
  item.validate();
  return item;
}

}  // namespace

void InstructionSample::validate() const {
  if (conversations.empty()) throw SchemaError(0, "sample " + record_id + " has no turns");
  if (loss_mask.size() != conversations.size()) {
    throw SchemaError(0, "sample " + record_id + ": loss_mask length differs from conversations");
  }
  for (std::size_t i = 0; i < conversations.size(); ++i) {
    From expected = i % 2 == 0 ? From::human : From::ai;
    if (conversations[i].from != expected) {
      throw SchemaError(0, "sample " + record_id + ": turns must alternate starting with human");
    }
    if (loss_mask[i] != (conversations[i].from == From::ai)) {
      throw SchemaError(0, "sample " + record_id + ": loss_mask disagrees with roles at turn " + std::to_string(i));
    }
  }
}

InstructionSample render_conversation(const SourceRecord& record) {
  record.validate();
  InstructionSample s;
  s.record_id = record.record_id;
  s.source_id = record.source_id;
  s.language = record.language;
  s.kind = record.kind;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, chat::McqaItem>) {
          s.conversations = {{From::human, mcqa_prompt(p)}, {From::ai, mcqa_answer(p)}};
        } else if constexpr (std::is_same_v<T, QaPair>) {
          s.conversations = {{From::human, p.question}, {From::ai, p.answer}};
        } else {
          for (const auto& t : p.turns) {
            s.conversations.push_back({t.speaker == chat::Speaker::patient ? From::human : From::ai, t.text});
          }
        }
      },
      record.payload);
  for (const auto& t : s.conversations) s.loss_mask.push_back(t.from == From::ai);
  return s;
}

Payload recover_payload(const InstructionSample& s) {
  s.validate();
  switch (s.kind) {
    case Kind::MCQA: return parse_mcqa_turns(s);
    case Kind::QA:
      if (s.conversations.size() != 2) throw SchemaError(0, "QA sample must have two turns");
      return QaPair{s.conversations[0].value, s.conversations[1].value};
    case Kind::Chat: {
      chat::ChatTranscript t;
      t.grounding_id = s.source_id;
      for (const auto& c : s.conversations) {
        t.turns.push_back({c.from == From::human ? chat::Speaker::patient : chat::Speaker::doctor, c.value});
      }
      return t;
    }
  }
  throw SchemaError(0, "bad kind");
}

Json to_json(const InstructionSample& s, AssistantTag tag) {
  const char* ai = tag == AssistantTag::gpt ? "gpt" : "AI";
  Json conversations = Json::array();
  for (const auto& t : s.conversations) {
    conversations.push_back({{"from", t.from == From::human ? "human" : ai}, {"value", t.value}});
  }
  return {{"id", s.record_id},
          {"source_id", s.source_id},
          {"language", to_string(s.language)},
          {"kind", to_string(s.kind)},
          {"conversations", std::move(conversations)},
          {"loss_mask", s.loss_mask}};
}

InstructionSample sample_from_json(const Json& j) {
  try {
    InstructionSample s;
    s.record_id = j.at("id").get<std::string>();
    s.source_id = j.value("source_id", s.record_id);
    s.language = language_from_string(j.at("language").get<std::string>());
    s.kind = kind_from_string(j.at("kind").get<std::string>());
    for (const auto& t : j.at("conversations")) {
      std::string from = t.at("from").get<std::string>();
      From f;
      if (from == "human") f = From::human;
      else if (from == "AI" || from == "gpt") f = From::ai;
      else throw SchemaError(0, "unknown speaker '" + from + "'");
      s.conversations.push_back({f, t.at("value").get<std::string>()});
    }
    if (j.contains("loss_mask")) {
      s.loss_mask = j["loss_mask"].get<std::vector<bool>>();
    } else {
      for (const auto& t : s.conversations) s.loss_mask.push_back(t.from == From::ai);
    }
    s.validate();
    return s;
  } catch (const Json::exception& e) {
    throw SchemaError(0, std::string("bad instruction sample: ") + e.what());
  }
}

}  // namespace medforge::corpus
