// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/gateway/replay.hpp"

#include "medforge/common/error.hpp"

namespace medforge::gateway {

ReplayLog::ReplayLog(const std::filesystem::path& path, std::shared_ptr<Clock> clock)
    : log_(path), clock_(std::move(clock)) {}

void ReplayLog::record_attempt(const CompletionRequest& req, int attempt,
                               const CompletionResult& result, const std::string& error) {
  Json rec = {
      {"request_tag", req.request_tag},
      {"key", request_key(req)},
      {"attempt", attempt},
      {"messages", messages_to_json(req.messages)},
      {"max_output_tokens", req.max_output_tokens},
      {"temperature", req.temperature},
      {"response_text", result.text},
      {"finish_reason", to_string(result.finish_reason)},
      {"backend_id", result.backend_id},
      {"latency_ms", result.latency_ms},
      {"timestamp", format_iso8601(clock_->now_ms())},
  };
  if (!error.empty()) rec["error"] = error;
  log_.append(rec);
}

void ReplayLog::record_option_scores(const CompletionRequest& req,
                                     const std::vector<std::string>& options,
                                     const std::vector<double>& scores,
                                     const std::string& backend_id) {
  log_.append({
      {"request_tag", req.request_tag},
      {"key", request_key(req)},
      {"messages", messages_to_json(req.messages)},
      {"options", options},
      {"option_scores", scores},
      {"backend_id", backend_id},
      {"timestamp", format_iso8601(clock_->now_ms())},
  });
}

std::shared_ptr<ReplayBackend> ReplayBackend::load(const std::filesystem::path& path) {
  auto backend = std::make_shared<ReplayBackend>();
  for (const auto& [line, rec] : read_jsonl(path)) {
    try {
      std::string key = rec.at("key").get<std::string>();
      if (rec.contains("option_scores")) {
        backend->option_scores_[key].push_back(rec["option_scores"].get<std::vector<double>>());
        continue;
      }
      auto reason = finish_reason_from_string(rec.at("finish_reason").get<std::string>());
      if (reason == FinishReason::backend_error) continue;
      backend->completions_[key].push_back(
          {rec.at("response_text").get<std::string>(), reason, rec.value("backend_id", "")});
    } catch (const Json::exception& e) {
      throw SchemaError(line, std::string("bad replay record: ") + e.what());
    }
  }
  return backend;
}

CompletionResult ReplayBackend::call(const CompletionRequest& req) {
  std::lock_guard lock(mu_);
  std::string key = request_key(req);
  auto it = completions_.find(key);
  if (it == completions_.end() || it->second.empty()) {
    throw ScriptMiss("replay log has no response for '" + key + "'");
  }
  Entry e = std::move(it->second.front());
  it->second.pop_front();
  return {e.text, e.finish_reason, "replay", 0};
}

std::optional<std::vector<double>> ReplayBackend::score_options(const CompletionRequest& req,
                                                                const std::vector<std::string>&) {
  std::lock_guard lock(mu_);
  auto it = option_scores_.find(request_key(req));
  if (it == option_scores_.end() || it->second.empty()) return std::nullopt;
  auto scores = std::move(it->second.front());
  it->second.pop_front();
  return scores;
}

std::size_t ReplayBackend::recorded_keys() const {
  std::lock_guard lock(mu_);
  return completions_.size() + option_scores_.size();
}

}  // namespace medforge::gateway
