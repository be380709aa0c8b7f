// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/gateway/mock_backend.hpp"

#include <thread>

#include "medforge/common/error.hpp"

namespace medforge::gateway {

namespace {

CompletionResult realize(const ScriptedResponse& r, const std::string& backend_id,
                         const std::string& key) {
  switch (r.kind) {
    case ScriptedResponse::Kind::text:
      if (r.text.empty()) throw TransientError("empty completion for " + key);
      return {r.text, FinishReason::complete, backend_id, 0};
    case ScriptedResponse::Kind::truncated:
      return {r.text, FinishReason::truncated, backend_id, 0};
    case ScriptedResponse::Kind::transient_failure:
      throw TransientError("scripted failure for " + key);
    case ScriptedResponse::Kind::auth_failure:
      throw AuthError("scripted auth failure for " + key);
  }
  throw BackendError("bad scripted response");
}

}  // namespace

MockBackend::MockBackend(Script script, std::string id)
    : id_(std::move(id)), script_(std::move(script)) {}

Script MockBackend::script_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError(0, "mock script must be a JSON object");
  Script script;
  for (const auto& [key, seq] : j.items()) {
    if (!seq.is_array()) throw SchemaError(0, "script entry '" + key + "' must be an array");
    auto& out = script[key];
    for (const auto& r : seq) {
      if (r.is_string()) {
        out.push_back(ScriptedResponse::ok(r.get<std::string>()));
      } else if (r.is_object() && r.value("fail", false)) {
        out.push_back(ScriptedResponse::fail());
      } else if (r.is_object() && r.value("auth_fail", false)) {
        out.push_back(ScriptedResponse::auth_fail());
      } else if (r.is_object() && r.contains("truncated")) {
        out.push_back(ScriptedResponse::cut(r.at("truncated").get<std::string>()));
      } else {
        throw SchemaError(0, "unrecognised scripted response under '" + key + "'");
      }
    }
  }
  return script;
}

Json MockBackend::script_to_json(const Script& script) {
  Json j = Json::object();
  for (const auto& [key, seq] : script) {
    Json arr = Json::array();
    for (const auto& r : seq) {
      switch (r.kind) {
        case ScriptedResponse::Kind::text: arr.push_back(r.text); break;
        case ScriptedResponse::Kind::truncated: arr.push_back({{"truncated", r.text}}); break;
        case ScriptedResponse::Kind::transient_failure: arr.push_back({{"fail", true}}); break;
        case ScriptedResponse::Kind::auth_failure: arr.push_back({{"auth_fail", true}}); break;
      }
    }
    j[key] = std::move(arr);
  }
  return j;
}

CompletionResult MockBackend::call(const CompletionRequest& req) {
  CallProbe::Scope scope(probe_);
  if (delay_.count() > 0) std::this_thread::sleep_for(delay_);

  ScriptedResponse response;
  std::string key;
  {
    std::lock_guard lock(mu_);
    auto it = req.request_tag.empty() ? script_.end() : script_.find(req.request_tag);
    if (it == script_.end()) it = script_.find(message_hash(req.messages));
    if (it == script_.end()) throw ScriptMiss("no script for '" + request_key(req) + "'");
    key = it->first;
    std::size_t& pos = cursor_[key];
    if (pos >= it->second.size()) throw ScriptMiss("script exhausted for '" + key + "'");
    response = it->second[pos++];
  }
  return realize(response, id_, key);
}

int MockBackend::calls_for(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = cursor_.find(key);
  return it == cursor_.end() ? 0 : static_cast<int>(it->second);
}

FunctionBackend::FunctionBackend(std::string id, Responder responder, OptionScorer scorer)
    : id_(std::move(id)), responder_(std::move(responder)), scorer_(std::move(scorer)) {}

CompletionResult FunctionBackend::call(const CompletionRequest& req) {
  CallProbe::Scope scope(probe_);
  if (delay_.count() > 0) std::this_thread::sleep_for(delay_);
  return realize(responder_(req), id_, request_key(req));
}

std::optional<std::vector<double>> FunctionBackend::score_options(
    const CompletionRequest& req, const std::vector<std::string>& options) {
  if (!scorer_) return std::nullopt;
  CallProbe::Scope scope(probe_);
  return scorer_(req, options);
}

}  // namespace medforge::gateway
