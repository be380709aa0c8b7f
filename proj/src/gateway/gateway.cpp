// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/gateway/gateway.hpp"

#include <algorithm>
#include <thread>

#include "medforge/common/error.hpp"

namespace medforge::gateway {

class Gateway::Admission {
 public:
  explicit Admission(Gateway& g) : g_(g) {
    std::unique_lock lock(g_.mu_);
    g_.cv_.wait(lock, [&] { return g_.inflight_ < g_.cfg_.max_inflight; });
    ++g_.inflight_;
    g_.peak_ = std::max(g_.peak_, g_.inflight_);
  }
  ~Admission() {
    {
      std::lock_guard lock(g_.mu_);
      --g_.inflight_;
    }
    g_.cv_.notify_one();
  }
  Admission(const Admission&) = delete;
  Admission& operator=(const Admission&) = delete;

 private:
  Gateway& g_;
};

Gateway::Gateway(std::shared_ptr<Backend> backend, BackendConfig cfg,
                 std::shared_ptr<ReplayLog> log, Sleeper sleeper)
    : backend_(std::move(backend)), cfg_(std::move(cfg)), log_(std::move(log)),
      sleeper_(std::move(sleeper)) {
  cfg_.validate();
  if (!backend_) throw ConfigError("gateway needs a backend");
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

int Gateway::peak_inflight() const {
  std::lock_guard lock(mu_);
  return peak_;
}

CompletionResult Gateway::complete(const CompletionRequest& req) {
  req.validate();
  const int attempts = cfg_.max_retries + 1;
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    if (attempt > 1) {
      // min_backoff * 2^(attempt-2), capped at 30 s
      long long backoff = cfg_.min_retry_backoff_ms;
      for (int i = 2; i < attempt && backoff < 30000; ++i) backoff *= 2;
      sleeper_(std::chrono::milliseconds(std::min(backoff, 30000LL)));
    }
    auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
      return std::chrono::duration_cast<std::chrono::milliseconds>(
                 std::chrono::steady_clock::now() - started)
          .count();
    };
    try {
      CompletionResult result;
      {
        Admission admit(*this);
        result = backend_->call(req);
      }
      result.latency_ms = elapsed();
      if (log_) log_->record_attempt(req, attempt, result);
      return result;
    } catch (const TransientError& e) {
      last_error = e.what();
      if (log_) {
        log_->record_attempt(req, attempt,
                             {"", FinishReason::backend_error, backend_->id(), elapsed()}, last_error);
      }
    } catch (const Error& e) {
      if (log_) {
        log_->record_attempt(req, attempt,
                             {"", FinishReason::backend_error, backend_->id(), elapsed()}, e.what());
      }
      throw;
    }
  }
  throw ExhaustedRetries("'" + request_key(req) + "' failed after " + std::to_string(attempts) +
                         " attempt(s): " + last_error);
}

std::optional<std::vector<double>> Gateway::score_options(const CompletionRequest& req,
                                                          const std::vector<std::string>& options) {
  req.validate();
  std::optional<std::vector<double>> scores;
  {
    Admission admit(*this);
    scores = backend_->score_options(req, options);
  }
  if (scores && scores->size() != options.size()) {
    throw BackendError("backend returned " + std::to_string(scores->size()) + " scores for " +
                       std::to_string(options.size()) + " options");
  }
  if (scores && log_) log_->record_option_scores(req, options, *scores, backend_->id());
  return scores;
}

}  // namespace medforge::gateway
