// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/translate/unit.hpp"

#include "medforge/common/error.hpp"

namespace medforge::translate {

std::string_view to_string(UnitStatus s) {
  switch (s) {
    case UnitStatus::pending: return "pending";
    case UnitStatus::auto_accepted: return "auto_accepted";
    case UnitStatus::needs_review: return "needs_review";
    case UnitStatus::human_approved: return "human_approved";
    case UnitStatus::human_corrected: return "human_corrected";
    case UnitStatus::rejected: return "rejected";
  }
  return "pending";
}

UnitStatus unit_status_from_string(std::string_view s) {
  for (auto st : {UnitStatus::pending, UnitStatus::auto_accepted, UnitStatus::needs_review,
                  UnitStatus::human_approved, UnitStatus::human_corrected, UnitStatus::rejected}) {
    if (to_string(st) == s) return st;
  }
  throw SchemaError(0, "unknown unit status '" + std::string(s) + "'");
}

void LoopConfig::validate() const {
  if (threshold < 0 || threshold > 100) throw ConfigError("threshold must be in [0, 100]");
  if (max_rounds < 1) throw ConfigError("max_rounds must be >= 1");
  if (!(audit_rate >= 0.0 && audit_rate <= 1.0)) throw ConfigError("audit_rate must be in [0, 1]");
}

Json to_json(const Field& f) { return {{"name", f.name}, {"text", f.text}}; }

Json to_json(const Fields& fields) {
  Json arr = Json::array();
  for (const auto& f : fields) arr.push_back(to_json(f));
  return arr;
}

Fields fields_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError(0, "field list must be an array");
  Fields out;
  for (const auto& f : j) out.push_back({f.at("name").get<std::string>(), f.at("text").get<std::string>()});
  return out;
}

Json to_json(const TranslationUnit& u) {
  Json rounds = Json::array();
  for (const auto& r : u.rounds) {
    rounds.push_back({{"round_index", r.round_index},
                      {"arabic_snapshot", to_json(r.arabic_snapshot)},
                      {"score",
                       {{"value", r.score.value},
                        {"rationale", r.score.rationale},
                        {"scorer_tag", r.score.scorer_tag}}}});
  }
  return {{"unit_id", u.unit_id},
          {"source_id", u.source_id},
          {"english_fields", to_json(u.english_fields)},
          {"arabic_fields", to_json(u.arabic_fields)},
          {"rounds", std::move(rounds)},
          {"status", to_string(u.status)},
          {"draft_round", u.draft_round},
          {"audit_selected", u.audit_selected},
          {"metadata", u.metadata}};
}

TranslationUnit unit_from_json(const Json& j) {
  try {
    TranslationUnit u;
    u.unit_id = j.at("unit_id").get<std::string>();
    u.source_id = j.value("source_id", "");
    u.english_fields = fields_from_json(j.at("english_fields"));
    if (j.contains("arabic_fields")) u.arabic_fields = fields_from_json(j["arabic_fields"]);
    if (j.contains("rounds")) {
      for (const auto& r : j["rounds"]) {
        const auto& s = r.at("score");
        u.rounds.push_back({r.at("round_index").get<int>(), fields_from_json(r.at("arabic_snapshot")),
                            {s.at("value").get<int>(), s.value("rationale", ""), s.value("scorer_tag", "")}});
      }
    }
    u.status = unit_status_from_string(j.value("status", "pending"));
    u.draft_round = j.value("draft_round", u.arabic_fields.empty() ? 0 : static_cast<int>(u.rounds.size()));
    u.audit_selected = j.value("audit_selected", false);
    if (j.contains("metadata")) u.metadata = j["metadata"];

    if (u.unit_id.empty()) throw SchemaError(0, "unit_id is empty");
    if (!u.arabic_fields.empty() && !same_field_names(u.english_fields, u.arabic_fields)) {
      throw SchemaError(0, "unit " + u.unit_id + ": arabic_fields do not align with english_fields");
    }
    for (std::size_t i = 0; i < u.rounds.size(); ++i) {
      const auto& r = u.rounds[i];
      if (r.score.value < 0 || r.score.value > 100) throw SchemaError(0, "score out of range");
      if (i > 0 && r.round_index <= u.rounds[i - 1].round_index) {
        throw SchemaError(0, "unit " + u.unit_id + ": round_index must increase");
      }
    }
    if ((u.status == UnitStatus::auto_accepted || u.status == UnitStatus::needs_review) &&
        u.rounds.empty()) {
      throw SchemaError(0, "unit " + u.unit_id + ": scored status without rounds");
    }
    return u;
  } catch (const Json::exception& e) {
    throw SchemaError(0, std::string("bad translation unit: ") + e.what());
  }
}

bool same_field_names(const Fields& a, const Fields& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name) return false;
  }
  return true;
}

bool can_transition(const TranslationUnit& unit, UnitStatus to) {
  switch (unit.status) {
    case UnitStatus::pending:
      return to == UnitStatus::auto_accepted || to == UnitStatus::needs_review;
    case UnitStatus::needs_review:
      return to == UnitStatus::human_approved || to == UnitStatus::human_corrected ||
             to == UnitStatus::rejected;
    case UnitStatus::auto_accepted:
      return unit.audit_selected && (to == UnitStatus::human_approved ||
                                     to == UnitStatus::human_corrected || to == UnitStatus::rejected);
    default:
      return false;
  }
}

void transition(TranslationUnit& unit, UnitStatus to) {
  if (!can_transition(unit, to)) {
    throw InvalidState("unit " + unit.unit_id + ": cannot move from " +
                       std::string(to_string(unit.status)) + " to " + std::string(to_string(to)));
  }
  unit.status = to;
}

bool eligible_for_corpus(const TranslationUnit& unit) {
  switch (unit.status) {
    case UnitStatus::auto_accepted: return !unit.audit_selected;
    case UnitStatus::human_approved:
    case UnitStatus::human_corrected: return true;
    default: return false;
  }
}

}  // namespace medforge::translate
