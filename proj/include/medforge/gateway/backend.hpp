// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <vector>

#include "medforge/gateway/types.hpp"

namespace medforge::gateway {

/// A chat-completion backend. `call` performs exactly one attempt; retries
/// and admission control live in Gateway.
///
/// Implementations throw TransientError for failures worth retrying and
/// AuthError / ScriptMiss / BackendError for failures that are not.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual std::string id() const = 0;
  virtual CompletionResult call(const CompletionRequest& req) = 0;

  /// Log-likelihood of each option given the prompt, for backends that
  /// expose per-option scores. nullopt when unsupported.
  virtual std::optional<std::vector<double>> score_options(const CompletionRequest& req,
                                                           const std::vector<std::string>& options);
};

/// Counts calls and tracks the highest number of calls in progress at once.
class CallProbe {
 public:
  class Scope {
   public:
    explicit Scope(CallProbe& probe);
    ~Scope();
    Scope(const Scope&) = delete;
    Scope& operator=(const Scope&) = delete;

   private:
    CallProbe& probe_;
  };

  int calls() const noexcept { return calls_.load(); }
  int peak_inflight() const noexcept { return peak_.load(); }

 private:
  std::atomic<int> calls_{0};
  std::atomic<int> inflight_{0};
  std::atomic<int> peak_{0};
};

}  // namespace medforge::gateway
