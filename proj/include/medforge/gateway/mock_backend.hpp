// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "medforge/common/json.hpp"
#include "medforge/gateway/backend.hpp"

namespace medforge::gateway {

struct ScriptedResponse {
  enum class Kind { text, truncated, transient_failure, auth_failure };

  Kind kind = Kind::text;
  std::string text;

  static ScriptedResponse ok(std::string text) { return {Kind::text, std::move(text)}; }
  static ScriptedResponse cut(std::string text) { return {Kind::truncated, std::move(text)}; }
  static ScriptedResponse fail() { return {Kind::transient_failure, {}}; }
  static ScriptedResponse auth_fail() { return {Kind::auth_failure, {}}; }
};

/// Keys are request tags or message hashes (see request_key).
using Script = std::map<std::string, std::vector<ScriptedResponse>>;

/// Serves scripted responses in order, per key. A request whose key is not
/// scripted, or whose sequence is exhausted, raises ScriptMiss. Lookup
/// tries the request tag first and falls back to the message hash.
class MockBackend final : public Backend {
 public:
  explicit MockBackend(Script script, std::string id = "mock");

  /// Script file shape: {"<key>": ["text", {"fail": true}, {"auth_fail": true},
  /// {"truncated": "partial"}, ...], ...}
  static Script script_from_json(const Json& j);
  static Json script_to_json(const Script& script);

  std::string id() const override { return id_; }
  CompletionResult call(const CompletionRequest& req) override;

  /// Artificial per-call latency, for concurrency tests.
  void set_delay(std::chrono::milliseconds delay) { delay_ = delay; }

  int calls() const noexcept { return probe_.calls(); }
  int calls_for(const std::string& key) const;
  int peak_inflight() const noexcept { return probe_.peak_inflight(); }

 private:
  std::string id_;
  Script script_;
  std::map<std::string, std::size_t> cursor_;
  mutable std::mutex mu_;
  std::chrono::milliseconds delay_{0};
  CallProbe probe_;
};

/// Backend computed from the request by a pure function. Used for oracle
/// and synthetic backends whose responses are too many to script.
class FunctionBackend final : public Backend {
 public:
  using Responder = std::function<ScriptedResponse(const CompletionRequest&)>;
  using OptionScorer =
      std::function<std::vector<double>(const CompletionRequest&, const std::vector<std::string>&)>;

  FunctionBackend(std::string id, Responder responder, OptionScorer scorer = {});

  std::string id() const override { return id_; }
  CompletionResult call(const CompletionRequest& req) override;
  std::optional<std::vector<double>> score_options(const CompletionRequest& req,
                                                   const std::vector<std::string>& options) override;

  void set_delay(std::chrono::milliseconds delay) { delay_ = delay; }
  int calls() const noexcept { return probe_.calls(); }
  int peak_inflight() const noexcept { return probe_.peak_inflight(); }

 private:
  std::string id_;
  Responder responder_;
  OptionScorer scorer_;
  std::chrono::milliseconds delay_{0};
  CallProbe probe_;
};

}  // namespace medforge::gateway
