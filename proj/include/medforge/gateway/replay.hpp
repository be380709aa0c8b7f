// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "medforge/common/clock.hpp"
#include "medforge/common/io.hpp"
#include "medforge/gateway/backend.hpp"

namespace medforge::gateway {

/// Append-only JSONL log with one record per backend attempt:
/// {request_tag, key, attempt, messages, max_output_tokens, temperature,
///  response_text, finish_reason, backend_id, latency_ms, timestamp[, error]}
class ReplayLog {
 public:
  explicit ReplayLog(const std::filesystem::path& path,
                     std::shared_ptr<Clock> clock = std::make_shared<SystemClock>());

  void record_attempt(const CompletionRequest& req, int attempt, const CompletionResult& result,
                      const std::string& error = {});
  void record_option_scores(const CompletionRequest& req, const std::vector<std::string>& options,
                            const std::vector<double>& scores, const std::string& backend_id);

  const std::filesystem::path& path() const noexcept { return log_.path(); }

 private:
  AppendLog log_;
  std::shared_ptr<Clock> clock_;
};

/// Serves a previously recorded run without network access. Successful
/// (complete or truncated) responses are replayed per key in log order;
/// failed attempts are skipped since the original run retried past them.
class ReplayBackend final : public Backend {
 public:
  static std::shared_ptr<ReplayBackend> load(const std::filesystem::path& path);

  std::string id() const override { return "replay"; }
  CompletionResult call(const CompletionRequest& req) override;
  std::optional<std::vector<double>> score_options(const CompletionRequest& req,
                                                   const std::vector<std::string>& options) override;

  std::size_t recorded_keys() const;

 private:
  struct Entry {
    std::string text;
    FinishReason finish_reason;
    std::string backend_id;
  };
  std::map<std::string, std::deque<Entry>> completions_;
  std::map<std::string, std::deque<std::vector<double>>> option_scores_;
  mutable std::mutex mu_;
};

}  // namespace medforge::gateway
