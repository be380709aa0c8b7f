// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "medforge/gateway/gateway.hpp"
#include "medforge/translate/protocol.hpp"
#include "medforge/translate/unit.hpp"

namespace medforge::translate {

/// Iterative English->Arabic translation against a gateway: translate,
/// score, refine with the score as feedback, repeat until the threshold or
/// the round cap.
class Translator {
 public:
  explicit Translator(gateway::Gateway& gateway,
                      PromptTemplates templates = PromptTemplates::defaults(),
                      std::string scorer_tag = "llm-judge");

  Fields translate(const std::string& unit_id, const Fields& english);
  QualityScore score(const std::string& unit_id, int round, const Fields& english,
                     const Fields& arabic);
  Fields refine(const std::string& unit_id, int round, const Fields& english, const Fields& arabic,
                const QualityScore& prior);

  /// Advances a pending unit in place. Each completed round is recorded
  /// before the next call, so a failure leaves the unit pending with its
  /// partial rounds and calling again resumes where it stopped.
  TranslationUnit& run_iterative(TranslationUnit& unit, const LoopConfig& cfg);

 private:
  gateway::Gateway& gateway_;
  PromptTemplates templates_;
  std::string scorer_tag_;
};

struct BatchOutcome {
  std::vector<TranslationUnit> units;
  /// Per-unit error payload, nullopt when the unit finished.
  std::vector<std::optional<Json>> errors;
  std::size_t failed() const;
};

/// Runs every pending unit through the loop on `threads` workers. Units
/// that are not pending pass through untouched.
BatchOutcome run_batch(Translator& translator, std::vector<TranslationUnit> units,
                       const LoopConfig& cfg, int threads);

/// Seeded selection of round-half-up(audit_rate * n) accepted units for
/// human review. Depends only on the sorted ids, the rate and the seed.
/// Returns sorted unit ids.
std::vector<std::string> audit_sample(const std::vector<TranslationUnit>& accepted,
                                      const LoopConfig& cfg);

/// Offline calibration sheet: one row per scored unit with its final score
/// and English/Arabic text pair.
std::string calibration_csv(const std::vector<TranslationUnit>& units);

}  // namespace medforge::translate
