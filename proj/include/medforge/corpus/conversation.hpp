// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "medforge/common/json.hpp"
#include "medforge/corpus/records.hpp"

namespace medforge::corpus {

enum class From { human, ai };

struct ConversationTurn {
  From from = From::human;
  std::string value;

  bool operator==(const ConversationTurn&) const = default;
};

/// A training sample in the {"conversations": [{"from", "value"}]} format.
/// loss_mask[i] is true exactly for AI turns.
struct InstructionSample {
  std::string record_id;
  std::string source_id;
  Language language = Language::en;
  Kind kind = Kind::QA;
  std::vector<ConversationTurn> conversations;
  std::vector<bool> loss_mask;

  /// Checks alternation starting with human and the mask law.
  void validate() const;

  bool operator==(const InstructionSample&) const = default;
};

/// Assistant role string on disk: "AI" by default, "gpt" for tooling that
/// expects the Vicuna/ShareGPT spelling.
enum class AssistantTag { ai, gpt };

/// MCQA: one human turn (optional context, question, lettered options) and
/// one AI turn with the gold letter and its text. QA: question/answer.
/// Chat: patient turns become human, doctor turns AI.
InstructionSample render_conversation(const SourceRecord& record);

/// Rebuilds the payload carried by a rendered sample.
Payload recover_payload(const InstructionSample& sample);

Json to_json(const InstructionSample& s, AssistantTag tag = AssistantTag::ai);
/// Accepts both "AI" and "gpt". Throws SchemaError on malformed samples or
/// a mask that disagrees with the roles.
InstructionSample sample_from_json(const Json& j);

}  // namespace medforge::corpus
