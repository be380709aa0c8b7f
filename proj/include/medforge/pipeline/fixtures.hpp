// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "medforge/chat/mcqa.hpp"
#include "medforge/common/json.hpp"
#include "medforge/eval/benchmark.hpp"
#include "medforge/gateway/mock_backend.hpp"
#include "medforge/translate/unit.hpp"

namespace medforge::pipeline {

/// Small synthetic clinical vignettes bundled for the demo.
struct Fixtures {
  std::vector<Json> mcqa_lines;  // MedMCQA source schema
  std::vector<Json> qa_lines;    // MedicationQA source schema
  std::vector<eval::BenchmarkItem> benchmark_en;
};

Fixtures demo_fixtures();

/// Mock replies for chat synthesis. Some items get a malformed or cut
/// first reply so the regeneration path runs.
void add_chat_script(gateway::Script& script, const std::vector<chat::McqaItem>& items);

/// Mock replies for the translation loop, cycling through fixed score
/// patterns. `always_pass` gives every unit a single passing round.
void add_translation_script(gateway::Script& script, const std::vector<translate::TranslationUnit>& units,
                            bool always_pass = false);

/// Score sequences the demo script cycles through.
const std::vector<std::vector<int>>& demo_score_patterns();

}  // namespace medforge::pipeline
