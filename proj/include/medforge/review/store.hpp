// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/common/clock.hpp"
#include "medforge/common/io.hpp"
#include "medforge/common/json.hpp"
#include "medforge/translate/unit.hpp"

namespace medforge::review {

enum class Reason { below_threshold, random_audit };
enum class TaskState { open, claimed, decided };
enum class Verdict { approve, edit, reject };

std::string_view to_string(Reason r);
std::string_view to_string(TaskState s);
std::string_view to_string(Verdict v);
Reason reason_from_string(std::string_view s);
TaskState task_state_from_string(std::string_view s);
Verdict verdict_from_string(std::string_view s);

struct Decision {
  Verdict verdict = Verdict::approve;
  std::optional<translate::Fields> edited_arabic_fields;
  std::string reviewer_tag;
  std::int64_t decided_at = 0;

  bool operator==(const Decision&) const = default;
};

struct ReviewTask {
  std::string task_id;
  std::string unit_id;
  Reason reason = Reason::below_threshold;
  std::int64_t created_at = 0;
  TaskState state = TaskState::open;
  std::optional<std::string> claimed_by;
  std::int64_t claim_expires_at = 0;
  std::optional<Decision> decision;
  /// Bumped on every state change.
  int version = 1;

  bool operator==(const ReviewTask&) const = default;
};

Json to_json(const Decision& d);
Decision decision_from_json(const Json& j);
Json to_json(const ReviewTask& t);
ReviewTask task_from_json(const Json& j);

struct TaskFilter {
  std::optional<TaskState> state;
  std::optional<Reason> reason;
  std::size_t page = 1;  // 1-based
  std::size_t page_size = 50;
};

inline constexpr std::size_t kMaxPageSize = 200;

struct TaskView {
  ReviewTask task;
  translate::TranslationUnit unit;
};

Json to_json(const TaskView& v);

struct TaskPage {
  std::vector<TaskView> tasks;
  std::size_t total = 0;
  std::size_t page = 1;
  std::size_t page_size = 0;
};

struct QueueStats {
  std::size_t open = 0;
  std::size_t claimed = 0;
  std::size_t decided = 0;
  std::map<std::string, std::size_t> by_verdict;
  std::map<std::string, std::size_t> by_reason;
  std::map<std::string, std::size_t> units_by_status;
};

Json to_json(const QueueStats& s);

/// File-backed review queue: events.log (append-only JSONL) plus a
/// periodic snapshot.json. Every mutation is serialized under one lock.
class ReviewStore {
 public:
  explicit ReviewStore(std::filesystem::path dir,
                       std::shared_ptr<Clock> clock = std::make_shared<SystemClock>(),
                       std::int64_t claim_timeout_ms = 15 * 60 * 1000);

  /// Inserts or replaces units by unit_id.
  void import_units(const std::vector<translate::TranslationUnit>& units);

  /// Idempotent for the same (unit, reason) while the task is undecided.
  ReviewTask enqueue(const std::string& unit_id, Reason reason);

  ReviewTask claim(const std::string& task_id, const std::string& reviewer_tag);

  TaskPage list_tasks(const TaskFilter& filter) const;
  TaskView get_task(const std::string& task_id) const;

  /// `expected_version`, when given, must equal the task's current version.
  translate::TranslationUnit submit_decision(const std::string& task_id, Verdict verdict,
                                             std::optional<translate::Fields> edited_arabic_fields,
                                             const std::string& reviewer_tag,
                                             std::optional<int> expected_version = std::nullopt);

  QueueStats stats() const;

  std::vector<translate::TranslationUnit> units() const;
  std::optional<translate::TranslationUnit> unit(const std::string& unit_id) const;

  /// Writes snapshot.json and units.jsonl.
  void snapshot() const;

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path events_path() const { return dir_ / "events.log"; }

 private:
  void apply(const Json& event);
  void append(Json event);
  void snapshot_locked() const;
  ReviewTask& task_locked(const std::string& task_id);

  std::filesystem::path dir_;
  std::shared_ptr<Clock> clock_;
  std::int64_t claim_timeout_ms_;

  mutable std::mutex mu_;
  std::map<std::string, translate::TranslationUnit> units_;
  std::map<std::string, ReviewTask> tasks_;
  std::size_t next_task_ = 1;
  std::size_t events_ = 0;
  std::unique_ptr<AppendLog> log_;
};

/// Applies the enqueue and decision events in `events_log` to `initial`
/// and returns the resulting units sorted by unit_id.
std::vector<translate::TranslationUnit> replay_decisions(
    const std::vector<translate::TranslationUnit>& initial, const std::filesystem::path& events_log);

}  // namespace medforge::review
