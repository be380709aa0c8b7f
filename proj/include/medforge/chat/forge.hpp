// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "medforge/chat/mcqa.hpp"
#include "medforge/chat/transcript.hpp"
#include "medforge/corpus/tokenizer.hpp"
#include "medforge/gateway/gateway.hpp"

namespace medforge::chat {

/// Dialogue prompt with placeholders {question}, {options}, {answer}
/// (required) and {context} (optional).
struct ChatTemplate {
  std::string text;

  static ChatTemplate defaults();
  /// Throws TemplateError when a required placeholder is missing.
  static ChatTemplate load(const std::filesystem::path& path);
  void validate() const;
};

/// One request producing the whole dialogue. Deterministic for a fixed
/// (item, template).
gateway::CompletionRequest build_chat_prompt(const McqaItem& item, const ChatTemplate& tmpl);

class ChatForge {
 public:
  ChatForge(gateway::Gateway& gateway, ChatTemplate tmpl = ChatTemplate::defaults(),
            std::string tokenizer_id = std::string(corpus::kDefaultTokenizer));

  /// Generates, parses and validates a dialogue, regenerating invalid
  /// output up to `max_regen` more times. Throws SynthesisExhausted.
  ChatTranscript synthesize(const McqaItem& item, int max_regen);

 private:
  gateway::Gateway& gateway_;
  ChatTemplate template_;
  std::string tokenizer_id_;
};

struct ChatBatch {
  std::vector<std::optional<ChatTranscript>> transcripts;  // parallel to items
  std::vector<std::optional<Json>> errors;
  std::size_t failed() const;
};

ChatBatch synthesize_batch(ChatForge& forge, const std::vector<McqaItem>& items, int max_regen,
                           int threads);

}  // namespace medforge::chat
