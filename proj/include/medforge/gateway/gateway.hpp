// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <condition_variable>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "medforge/gateway/backend.hpp"
#include "medforge/gateway/replay.hpp"

namespace medforge::gateway {

/// Shared entry point for every LLM call in the pipeline. Validates the
/// request, admits at most max_inflight concurrent calls, retries transient
/// failures with exponential backoff and logs every attempt.
///
/// Truncated completions are returned as-is (finish_reason = truncated).
class Gateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  Gateway(std::shared_ptr<Backend> backend, BackendConfig cfg,
          std::shared_ptr<ReplayLog> log = nullptr, Sleeper sleeper = {});

  CompletionResult complete(const CompletionRequest& req);

  /// Per-option scores through the same admission gate. nullopt when the
  /// backend does not expose them.
  std::optional<std::vector<double>> score_options(const CompletionRequest& req,
                                                   const std::vector<std::string>& options);

  Backend& backend() { return *backend_; }
  const BackendConfig& config() const noexcept { return cfg_; }
  int peak_inflight() const;

 private:
  class Admission;

  std::shared_ptr<Backend> backend_;
  BackendConfig cfg_;
  std::shared_ptr<ReplayLog> log_;
  Sleeper sleeper_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  int inflight_ = 0;
  int peak_ = 0;
};

}  // namespace medforge::gateway
