// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/eval/benchmark.hpp"
#include "medforge/gateway/types.hpp"

namespace medforge::eval {

struct EvalTemplates {
  std::string en_instruction;
  std::string ar_instruction;

  static EvalTemplates defaults();
  /// Reads eval_en.txt and eval_ar.txt from `dir`.
  static EvalTemplates load(const std::filesystem::path& dir);
};

std::string option_letter(std::size_t index);

std::string request_tag(const BenchmarkItem& item);

/// Zero-shot prompt: optional context, question, "A) ..." option lines and
/// the language's instruction line.
gateway::CompletionRequest format_mcqa_prompt(const BenchmarkItem& item,
                                              const EvalTemplates& tmpl = EvalTemplates::defaults());

/// Rules, first match wins: a leading standalone letter, an "answer is X"
/// phrase, a unique option-text match. nullopt means Unparsed.
std::optional<std::size_t> extract_answer(std::string_view completion,
                                          const std::vector<std::string>& options);

}  // namespace medforge::eval
