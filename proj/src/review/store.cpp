// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/review/store.hpp"

#include <algorithm>
#include <fmt/format.h>

#include "medforge/common/error.hpp"
#include "medforge/common/utf8.hpp"

namespace medforge::review {

using translate::Fields;
using translate::TranslationUnit;
using translate::UnitStatus;

namespace {

constexpr std::size_t kSnapshotEvery = 64;

template <class E, std::size_t N>
E parse_enum(std::string_view s, const std::string_view (&names)[N], const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  throw SchemaError(0, fmt::format("unknown {} '{}'", what, s));
}

constexpr std::string_view kReasons[] = {"below_threshold", "random_audit"};
constexpr std::string_view kStates[] = {"open", "claimed", "decided"};
constexpr std::string_view kVerdicts[] = {"approve", "edit", "reject"};

void check_edit(const TranslationUnit& unit, const Fields& edited) {
  if (!translate::same_field_names(unit.english_fields, edited)) {
    throw AlignmentError(fmt::format("unit {} has {} fields; edit supplied {} not matching by name",
                                     unit.unit_id, unit.english_fields.size(), edited.size()));
  }
  for (const auto& f : edited) {
    if (trim(f.text).empty()) throw AlignmentError("edited field '" + f.name + "' is empty");
  }
}

void apply_decision(TranslationUnit& unit, const Decision& d) {
  switch (d.verdict) {
    case Verdict::approve:
      translate::transition(unit, UnitStatus::human_approved);
      break;
    case Verdict::edit:
      check_edit(unit, *d.edited_arabic_fields);
      translate::transition(unit, UnitStatus::human_corrected);
      unit.arabic_fields = *d.edited_arabic_fields;
      break;
    case Verdict::reject:
      translate::transition(unit, UnitStatus::rejected);
      break;
  }
}

void apply_enqueue(TranslationUnit& unit, Reason reason) {
  if (reason == Reason::random_audit) unit.audit_selected = true;
}

}  // namespace

std::string_view to_string(Reason r) { return kReasons[static_cast<int>(r)]; }
std::string_view to_string(TaskState s) { return kStates[static_cast<int>(s)]; }
std::string_view to_string(Verdict v) { return kVerdicts[static_cast<int>(v)]; }
Reason reason_from_string(std::string_view s) { return parse_enum<Reason>(s, kReasons, "reason"); }
TaskState task_state_from_string(std::string_view s) { return parse_enum<TaskState>(s, kStates, "state"); }
Verdict verdict_from_string(std::string_view s) { return parse_enum<Verdict>(s, kVerdicts, "verdict"); }

Json to_json(const Decision& d) {
  Json j = {{"verdict", to_string(d.verdict)}};
  j["edited_arabic_fields"] = d.edited_arabic_fields ? translate::to_json(*d.edited_arabic_fields) : Json(nullptr);
  j["reviewer_tag"] = d.reviewer_tag;
  j["decided_at"] = format_iso8601(d.decided_at);
  return j;
}

Decision decision_from_json(const Json& j) {
  Decision d;
  d.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  if (j.contains("edited_arabic_fields") && !j["edited_arabic_fields"].is_null()) {
    d.edited_arabic_fields = translate::fields_from_json(j["edited_arabic_fields"]);
  }
  d.reviewer_tag = j.value("reviewer_tag", std::string());
  if (j.contains("decided_at")) d.decided_at = parse_iso8601(j["decided_at"].get<std::string>());
  return d;
}

Json to_json(const ReviewTask& t) {
  Json j = {{"task_id", t.task_id},
            {"unit_id", t.unit_id},
            {"reason", to_string(t.reason)},
            {"created_at", format_iso8601(t.created_at)},
            {"state", to_string(t.state)},
            {"claimed_by", t.claimed_by ? Json(*t.claimed_by) : Json(nullptr)},
            {"claim_expires_at", t.claimed_by ? Json(format_iso8601(t.claim_expires_at)) : Json(nullptr)},
            {"decision", t.decision ? to_json(*t.decision) : Json(nullptr)},
            {"version", t.version}};
  return j;
}

ReviewTask task_from_json(const Json& j) {
  ReviewTask t;
  t.task_id = j.at("task_id").get<std::string>();
  t.unit_id = j.at("unit_id").get<std::string>();
  t.reason = reason_from_string(j.at("reason").get<std::string>());
  t.created_at = parse_iso8601(j.at("created_at").get<std::string>());
  t.state = task_state_from_string(j.at("state").get<std::string>());
  if (j.contains("claimed_by") && !j["claimed_by"].is_null()) {
    t.claimed_by = j["claimed_by"].get<std::string>();
    t.claim_expires_at = parse_iso8601(j.at("claim_expires_at").get<std::string>());
  }
  if (j.contains("decision") && !j["decision"].is_null()) t.decision = decision_from_json(j["decision"]);
  t.version = j.value("version", 1);
  return t;
}

Json to_json(const TaskView& v) {
  Json j = to_json(v.task);
  j["unit"] = translate::to_json(v.unit);
  Json history = Json::array();
  for (const auto& r : v.unit.rounds) history.push_back({{"round", r.round_index}, {"score", r.score.value}});
  j["score_history"] = std::move(history);
  return j;
}

Json to_json(const QueueStats& s) {
  return {{"queue_depth", s.open + s.claimed},
          {"open", s.open},
          {"claimed", s.claimed},
          {"decided", s.decided},
          {"decisions_by_verdict", s.by_verdict},
          {"tasks_by_reason", s.by_reason},
          {"units_by_status", s.units_by_status}};
}

ReviewStore::ReviewStore(std::filesystem::path dir, std::shared_ptr<Clock> clock, std::int64_t claim_timeout_ms)
    : dir_(std::move(dir)), clock_(std::move(clock)), claim_timeout_ms_(claim_timeout_ms) {
  std::filesystem::create_directories(dir_);
  std::size_t skip = 0;
  if (const auto snap = dir_ / "snapshot.json"; std::filesystem::exists(snap)) {
    const Json j = Json::parse(read_text(snap));
    skip = j.at("events").get<std::size_t>();
    next_task_ = j.at("next_task").get<std::size_t>();
    for (const auto& u : j.at("units")) {
      auto unit = translate::unit_from_json(u);
      units_[unit.unit_id] = std::move(unit);
    }
    for (const auto& t : j.at("tasks")) {
      auto task = task_from_json(t);
      tasks_[task.task_id] = std::move(task);
    }
  }
  if (std::filesystem::exists(events_path())) {
    for (const auto& [line, event] : read_jsonl(events_path())) {
      if (events_ < skip) {
        ++events_;
        continue;
      }
      apply(event);
      ++events_;
    }
  }
  log_ = std::make_unique<AppendLog>(events_path());
}

void ReviewStore::apply(const Json& e) {
  const auto type = e.at("event").get<std::string>();
  if (type == "import") {
    for (const auto& u : e.at("units")) {
      auto unit = translate::unit_from_json(u);
      units_[unit.unit_id] = std::move(unit);
    }
  } else if (type == "enqueue") {
    auto task = task_from_json(e.at("task"));
    apply_enqueue(units_.at(task.unit_id), task.reason);
    next_task_ = std::max(next_task_, std::stoul(task.task_id.substr(5)) + 1);
    tasks_[task.task_id] = std::move(task);
  } else if (type == "claim") {
    auto& t = tasks_.at(e.at("task_id").get<std::string>());
    t.state = TaskState::claimed;
    t.claimed_by = e.at("reviewer_tag").get<std::string>();
    t.claim_expires_at = parse_iso8601(e.at("expires_at").get<std::string>());
    ++t.version;
  } else if (type == "decision") {
    auto& t = tasks_.at(e.at("task_id").get<std::string>());
    auto d = decision_from_json(e.at("decision"));
    apply_decision(units_.at(t.unit_id), d);
    t.decision = std::move(d);
    t.state = TaskState::decided;
    ++t.version;
  } else {
    throw SchemaError(0, "unknown review event '" + type + "'");
  }
}

void ReviewStore::append(Json event) {
  log_->append(event);
  apply(event);
  if (++events_ % kSnapshotEvery == 0) snapshot_locked();
}

void ReviewStore::import_units(const std::vector<TranslationUnit>& units) {
  Json list = Json::array();
  for (const auto& u : units) list.push_back(translate::to_json(u));
  std::lock_guard lock(mu_);
  append({{"event", "import"}, {"units", std::move(list)}});
}

ReviewTask ReviewStore::enqueue(const std::string& unit_id, Reason reason) {
  std::lock_guard lock(mu_);
  auto uit = units_.find(unit_id);
  if (uit == units_.end()) throw UnknownUnit("no unit '" + unit_id + "'");
  for (const auto& [id, t] : tasks_) {
    if (t.unit_id != unit_id || t.state == TaskState::decided) continue;
    if (t.reason == reason) return t;
    throw DuplicateTask(fmt::format("unit {} already has undecided task {}", unit_id, id));
  }
  const auto want = reason == Reason::below_threshold ? UnitStatus::needs_review : UnitStatus::auto_accepted;
  if (uit->second.status != want) {
    throw InvalidState(fmt::format("unit {} is {}; {} requires {}", unit_id, translate::to_string(uit->second.status),
                                   to_string(reason), translate::to_string(want)));
  }
  ReviewTask t;
  t.task_id = fmt::format("task-{:06d}", next_task_);
  t.unit_id = unit_id;
  t.reason = reason;
  t.created_at = clock_->now_ms();
  append({{"event", "enqueue"}, {"task", to_json(t)}});
  return tasks_.at(t.task_id);
}

ReviewTask& ReviewStore::task_locked(const std::string& task_id) {
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) throw UnknownTask("no task '" + task_id + "'");
  return it->second;
}

ReviewTask ReviewStore::claim(const std::string& task_id, const std::string& reviewer_tag) {
  if (reviewer_tag.empty()) throw InvalidState("claim requires a reviewer_tag");
  std::lock_guard lock(mu_);
  auto& t = task_locked(task_id);
  const auto now = clock_->now_ms();
  if (t.state == TaskState::decided) throw AlreadyDecided("task " + task_id + " is already decided");
  if (t.state == TaskState::claimed && *t.claimed_by != reviewer_tag && t.claim_expires_at > now) {
    throw ClaimConflict(fmt::format("task {} is claimed by {}", task_id, *t.claimed_by));
  }
  append({{"event", "claim"},
          {"task_id", task_id},
          {"reviewer_tag", reviewer_tag},
          {"expires_at", format_iso8601(now + claim_timeout_ms_)}});
  return t;
}

TaskPage ReviewStore::list_tasks(const TaskFilter& filter) const {
  std::lock_guard lock(mu_);
  std::vector<const ReviewTask*> hits;
  for (const auto& [id, t] : tasks_) {
    if (filter.state && t.state != *filter.state) continue;
    if (filter.reason && t.reason != *filter.reason) continue;
    hits.push_back(&t);
  }
  std::sort(hits.begin(), hits.end(), [](const ReviewTask* a, const ReviewTask* b) {
    return std::tie(a->created_at, a->task_id) < std::tie(b->created_at, b->task_id);
  });
  TaskPage page;
  page.total = hits.size();
  page.page = std::max<std::size_t>(filter.page, 1);
  page.page_size = std::clamp<std::size_t>(filter.page_size, 1, kMaxPageSize);
  const std::size_t begin = (page.page - 1) * page.page_size;
  for (std::size_t i = begin; i < hits.size() && i < begin + page.page_size; ++i) {
    page.tasks.push_back({*hits[i], units_.at(hits[i]->unit_id)});
  }
  return page;
}

TaskView ReviewStore::get_task(const std::string& task_id) const {
  std::lock_guard lock(mu_);
  auto it = tasks_.find(task_id);
  if (it == tasks_.end()) throw UnknownTask("no task '" + task_id + "'");
  return {it->second, units_.at(it->second.unit_id)};
}

TranslationUnit ReviewStore::submit_decision(const std::string& task_id, Verdict verdict,
                                             std::optional<Fields> edited, const std::string& reviewer_tag,
                                             std::optional<int> expected_version) {
  std::lock_guard lock(mu_);
  auto& t = task_locked(task_id);
  if (t.state == TaskState::decided) throw AlreadyDecided("task " + task_id + " is already decided");
  const auto now = clock_->now_ms();
  if (expected_version && *expected_version != t.version) {
    throw ClaimConflict(fmt::format("task {} is at version {}, not {}", task_id, t.version, *expected_version));
  }
  if (t.state == TaskState::claimed && *t.claimed_by != reviewer_tag && t.claim_expires_at > now) {
    throw ClaimConflict(fmt::format("task {} is claimed by {}", task_id, *t.claimed_by));
  }
  Decision d{verdict, std::nullopt, reviewer_tag, now};
  if (verdict == Verdict::edit) {
    if (!edited) throw AlignmentError("edit verdict requires edited_arabic_fields");
    check_edit(units_.at(t.unit_id), *edited);
    d.edited_arabic_fields = std::move(edited);
  } else if (edited) {
    throw InvalidState("edited_arabic_fields only accompany an edit verdict");
  }
  // Validate the transition before anything is written.
  TranslationUnit probe = units_.at(t.unit_id);
  apply_decision(probe, d);
  append({{"event", "decision"}, {"task_id", task_id}, {"decision", to_json(d)}});
  return units_.at(t.unit_id);
}

QueueStats ReviewStore::stats() const {
  std::lock_guard lock(mu_);
  QueueStats s;
  for (auto v : {Verdict::approve, Verdict::edit, Verdict::reject}) s.by_verdict[std::string(to_string(v))] = 0;
  for (const auto& [id, t] : tasks_) {
    switch (t.state) {
      case TaskState::open: ++s.open; break;
      case TaskState::claimed: ++s.claimed; break;
      case TaskState::decided: ++s.decided; ++s.by_verdict[std::string(to_string(t.decision->verdict))]; break;
    }
    ++s.by_reason[std::string(to_string(t.reason))];
  }
  for (const auto& [id, u] : units_) ++s.units_by_status[std::string(translate::to_string(u.status))];
  return s;
}

std::vector<TranslationUnit> ReviewStore::units() const {
  std::lock_guard lock(mu_);
  std::vector<TranslationUnit> out;
  for (const auto& [id, u] : units_) out.push_back(u);
  return out;
}

std::optional<TranslationUnit> ReviewStore::unit(const std::string& unit_id) const {
  std::lock_guard lock(mu_);
  auto it = units_.find(unit_id);
  if (it == units_.end()) return std::nullopt;
  return it->second;
}

void ReviewStore::snapshot() const {
  std::lock_guard lock(mu_);
  snapshot_locked();
}

void ReviewStore::snapshot_locked() const {
  Json units = Json::array();
  std::vector<Json> lines;
  for (const auto& [id, u] : units_) {
    units.push_back(translate::to_json(u));
    lines.push_back(translate::to_json(u));
  }
  Json tasks = Json::array();
  for (const auto& [id, t] : tasks_) tasks.push_back(to_json(t));
  Json snap = {{"events", events_}, {"next_task", next_task_}, {"units", std::move(units)}, {"tasks", std::move(tasks)}};
  write_text_atomic(dir_ / "snapshot.json", snap.dump(2) + "\n");
  write_jsonl_atomic(dir_ / "units.jsonl", lines);
}

std::vector<TranslationUnit> replay_decisions(const std::vector<TranslationUnit>& initial,
                                              const std::filesystem::path& events_log) {
  std::map<std::string, TranslationUnit> units;
  for (const auto& u : initial) units[u.unit_id] = u;
  std::map<std::string, std::string> task_unit;
  for (const auto& [line, e] : read_jsonl(events_log)) {
    const auto type = e.at("event").get<std::string>();
    if (type == "enqueue") {
      const auto t = task_from_json(e.at("task"));
      task_unit[t.task_id] = t.unit_id;
      apply_enqueue(units.at(t.unit_id), t.reason);
    } else if (type == "decision") {
      apply_decision(units.at(task_unit.at(e.at("task_id").get<std::string>())),
                     decision_from_json(e.at("decision")));
    }
  }
  std::vector<TranslationUnit> out;
  for (auto& [id, u] : units) out.push_back(std::move(u));
  return out;
}

}  // namespace medforge::review
