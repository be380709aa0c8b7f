// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "medforge/corpus/records.hpp"
#include "medforge/translate/unit.hpp"

namespace medforge::corpus {

/// Flattens an English record into translatable fields:
///   MCQA  context?, question, option:<label>...
///   QA    question, answer
///   Chat  turn:<n>:<speaker>...
/// unit_id is "<record_id>/ar" and source_id the record id.
translate::TranslationUnit unit_from_record(const SourceRecord& english);

/// Rebuilds the Arabic counterpart of `english` from a translated unit.
/// The gold label, grounding and origin come from the English record.
/// Throws AlignmentError if the unit's fields do not fit the record.
SourceRecord arabic_record_from_unit(const translate::TranslationUnit& unit,
                                     const SourceRecord& english);

}  // namespace medforge::corpus
