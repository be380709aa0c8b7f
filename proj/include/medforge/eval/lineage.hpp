// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "medforge/eval/benchmark.hpp"
#include "medforge/translate/unit.hpp"

namespace medforge::eval {

/// unit_id is "<dataset>/<item_id>/ar"; fields context?, question, option:<letter>.
translate::TranslationUnit unit_from_item(const BenchmarkItem& english);

/// Arabic counterpart keeping item_id and gold_index.
BenchmarkItem arabic_item_from_unit(const translate::TranslationUnit& unit,
                                    const BenchmarkItem& english);

}  // namespace medforge::eval
