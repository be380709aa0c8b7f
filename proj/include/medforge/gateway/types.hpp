// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "medforge/common/json.hpp"

namespace medforge::gateway {

enum class Role { system, user, assistant };

struct Message {
  Role role = Role::user;
  std::string text;

  bool operator==(const Message&) const = default;
};

struct CompletionRequest {
  std::vector<Message> messages;
  int max_output_tokens = 1024;
  double temperature = 0.0;
  /// Opaque key for logging, mock scripts and replay. Empty means the
  /// content hash of the messages is used instead.
  std::string request_tag;

  /// Throws InvalidRequest when an invariant does not hold.
  void validate() const;
};

enum class FinishReason { complete, truncated, backend_error };

struct CompletionResult {
  std::string text;
  FinishReason finish_reason = FinishReason::complete;
  std::string backend_id;
  std::int64_t latency_ms = 0;
};

struct BackendConfig {
  std::string endpoint;
  std::string auth_token_env_var;
  std::string model;
  int max_retries = 3;
  int min_retry_backoff_ms = 200;
  int max_inflight = 4;
  int timeout_ms = 60000;

  void validate() const;
};

std::string_view to_string(Role role);
Role role_from_string(std::string_view s);
std::string_view to_string(FinishReason reason);
FinishReason finish_reason_from_string(std::string_view s);

Json messages_to_json(const std::vector<Message>& messages);
std::vector<Message> messages_from_json(const Json& j);

/// Content hash of the concatenated messages: the fallback mock/replay key.
std::string message_hash(const std::vector<Message>& messages);

/// request_tag when present, otherwise message_hash.
std::string request_key(const CompletionRequest& req);

}  // namespace medforge::gateway
