// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/chat/forge.hpp"

#include <algorithm>

#include "medforge/common/error.hpp"
#include "medforge/common/io.hpp"
#include "medforge/common/parallel.hpp"
#include "medforge/common/templates.hpp"

namespace medforge::chat {

ChatTemplate ChatTemplate::defaults() {
  return {
      "Write a realistic conversation between a patient and a doctor that is grounded in the "
      "multiple-choice question below.\n\n"
      "{context}"
      "Question: {question}\n"
      "Options:\n{options}\n"
      "The correct answer is option {answer}.\n\n"
      "Directives:\n"
      "- The patient opens the conversation, describing the situation from the question in "
      "their own words.\n"
      "- The doctor asks follow-up questions about symptoms, examinations and medical history "
      "before explaining, and the doctor's explanation must agree with the correct answer.\n"
      "- Never mention the question, the options or that a quiz exists.\n"
      "- Start every turn on a new line with \"Patient:\" or \"Doctor:\" and alternate "
      "strictly.\n"
      "- Continue until the conversation reaches a logical conclusion, using at most 12 turns "
      "and ending with a doctor turn.\n"
      "- Write [END] on its own line after the last turn.\n"};
}

void ChatTemplate::validate() const { render_template(text, {}, {"question", "options", "answer"}); }

ChatTemplate ChatTemplate::load(const std::filesystem::path& path) {
  ChatTemplate t{read_template(path)};
  t.validate();
  return t;
}

gateway::CompletionRequest build_chat_prompt(const McqaItem& item, const ChatTemplate& tmpl) {
  item.validate();
  std::string options;
  for (const auto& o : item.options) options += o.label + ". " + o.text + "\n";
  if (!options.empty()) options.pop_back();
  std::string context = item.context ? "Background: " + *item.context + "\n\n" : std::string();

  gateway::CompletionRequest req;
  req.messages = {
      {gateway::Role::system, "You write realistic, medically accurate doctor-patient dialogues."},
      {gateway::Role::user,
       render_template(tmpl.text,
                       {{"question", item.question},
                        {"options", options},
                        {"answer", item.gold_label},
                        {"context", context}},
                       {"question", "options", "answer"})}};
  req.max_output_tokens = 2048;
  req.temperature = 0.7;
  req.request_tag = item.item_id + "/chat";
  return req;
}

ChatForge::ChatForge(gateway::Gateway& gateway, ChatTemplate tmpl, std::string tokenizer_id)
    : gateway_(gateway), template_(std::move(tmpl)), tokenizer_id_(std::move(tokenizer_id)) {
  template_.validate();
  corpus::TokenizerRegistry::global().get(tokenizer_id_);
}

ChatTranscript ChatForge::synthesize(const McqaItem& item, int max_regen) {
  const auto req = build_chat_prompt(item, template_);
  const int attempts = std::max(0, max_regen) + 1;
  std::string last_problem;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    auto result = gateway_.complete(req);
    if (result.finish_reason == gateway::FinishReason::truncated) {
      last_problem = "completion was truncated";
      continue;
    }
    try {
      ChatTranscript t;
      t.grounding_id = item.item_id;
      t.turns = parse_transcript(result.text, /*require_terminal=*/true);
      t.attempts = attempt;
      for (const auto& turn : t.turns) t.token_count += corpus::count_tokens(turn.text, tokenizer_id_);
      return t;
    } catch (const RoleOrderError& e) {
      last_problem = e.what();
    } catch (const EmptyTurnError& e) {
      last_problem = e.what();
    } catch (const NoMarkersError& e) {
      last_problem = e.what();
    } catch (const MissingTerminalMarker& e) {
      last_problem = e.what();
    }
  }
  throw SynthesisExhausted("item " + item.item_id + ": no valid dialogue after " +
                           std::to_string(attempts) + " attempt(s); last problem: " + last_problem);
}

std::size_t ChatBatch::failed() const {
  return static_cast<std::size_t>(std::count_if(errors.begin(), errors.end(),
                                                [](const auto& e) { return e.has_value(); }));
}

ChatBatch synthesize_batch(ChatForge& forge, const std::vector<McqaItem>& items, int max_regen,
                           int threads) {
  ChatBatch batch;
  batch.transcripts.resize(items.size());
  batch.errors.resize(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) {
    try {
      batch.transcripts[i] = forge.synthesize(items[i], max_regen);
    } catch (const Error& e) {
      batch.errors[i] = e.to_json();
    }
  });
  return batch;
}

}  // namespace medforge::chat
