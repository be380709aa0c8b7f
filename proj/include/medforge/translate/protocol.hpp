// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "medforge/translate/unit.hpp"

namespace medforge::translate {

/// Fields travel to and from the backend as numbered sentinel blocks:
///
///   <<<1|question>>>
///   Is aspirin an NSAID?
///   <<<2|option:A>>>
///   Yes
///
/// The backend is told to answer with the same sentinels, so alignment can
/// be checked by index.
std::string encode_fields(const Fields& fields);

/// Splits a response into segments and re-attaches `reference` names by
/// position. Throws AlignmentError on a count or order mismatch, or an
/// empty segment.
Fields decode_fields(std::string_view response, const Fields& reference);

/// Prompt templates with placeholders {english}, {arabic} and {score}.
struct PromptTemplates {
  std::string translate;
  std::string score;
  std::string refine;

  static PromptTemplates defaults();

  /// Reads translate.txt, score.txt and refine.txt from `dir`; files that
  /// are absent keep their default. Throws TemplateError when a template
  /// lacks a required placeholder.
  static PromptTemplates load(const std::filesystem::path& dir);

  void validate() const;
};

/// Reads a 0-100 score and the rationale that follows it. A "score" label
/// takes precedence over the first bare integer in range.
QualityScore parse_score(std::string_view response, std::string scorer_tag);

}  // namespace medforge::translate
