// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "medforge/common/json.hpp"

namespace medforge::translate {

/// One named piece of a structured record, e.g. ("question", "...") or
/// ("option:B", "...").
struct Field {
  std::string name;
  std::string text;

  bool operator==(const Field&) const = default;
};

using Fields = std::vector<Field>;

struct QualityScore {
  int value = 0;  // [0, 100]
  std::string rationale;
  std::string scorer_tag;

  bool operator==(const QualityScore&) const = default;
};

struct RoundRecord {
  int round_index = 0;
  Fields arabic_snapshot;
  QualityScore score;

  bool operator==(const RoundRecord&) const = default;
};

enum class UnitStatus { pending, auto_accepted, needs_review, human_approved, human_corrected, rejected };

std::string_view to_string(UnitStatus s);
UnitStatus unit_status_from_string(std::string_view s);

struct LoopConfig {
  int threshold = 80;
  int max_rounds = 3;
  double audit_rate = 0.05;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct TranslationUnit {
  std::string unit_id;
  std::string source_id;
  Fields english_fields;
  Fields arabic_fields;
  std::vector<RoundRecord> rounds;
  UnitStatus status = UnitStatus::pending;
  /// Round that the current arabic_fields draft belongs to; 0 when no
  /// draft exists. A draft with draft_round == rounds.size() + 1 has been
  /// produced but not yet scored.
  int draft_round = 0;
  bool audit_selected = false;
  /// Gate parameters stamped by the loop (threshold, max_rounds, ...).
  Json metadata = Json::object();

  bool operator==(const TranslationUnit&) const = default;
};

Json to_json(const Field& f);
Json to_json(const Fields& fields);
Fields fields_from_json(const Json& j);
Json to_json(const TranslationUnit& u);
TranslationUnit unit_from_json(const Json& j);

bool same_field_names(const Fields& a, const Fields& b);

/// Lifecycle: pending -> auto_accepted | needs_review; needs_review ->
/// human_approved | human_corrected | rejected; auto_accepted -> the
/// human states only when the unit was selected for audit.
bool can_transition(const TranslationUnit& unit, UnitStatus to);

/// Applies a transition, throwing InvalidState when it is not allowed.
void transition(TranslationUnit& unit, UnitStatus to);

/// Whether a unit may contribute to a compiled corpus: accepted without a
/// pending audit, or approved/corrected by a reviewer.
bool eligible_for_corpus(const TranslationUnit& unit);

}  // namespace medforge::translate
