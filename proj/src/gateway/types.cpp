// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/gateway/types.hpp"

#include "medforge/common/error.hpp"
#include "medforge/common/hashing.hpp"
#include "medforge/common/utf8.hpp"

namespace medforge::gateway {

void CompletionRequest::validate() const {
  if (messages.empty()) throw InvalidRequest("request has no messages");
  if (messages.front().role == Role::assistant) {
    throw InvalidRequest("first message must be system or user");
  }
  if (max_output_tokens <= 0) throw InvalidRequest("max_output_tokens must be positive");
  if (!(temperature >= 0.0)) throw InvalidRequest("temperature must be >= 0");
  for (const auto& m : messages) {
    if (!is_valid_utf8(m.text)) throw InvalidRequest("message text is not valid UTF-8");
  }
}

void BackendConfig::validate() const {
  if (max_retries < 0) throw ConfigError("max_retries must be >= 0");
  if (min_retry_backoff_ms <= 0) throw ConfigError("min_retry_backoff_ms must be positive");
  if (max_inflight < 1) throw ConfigError("max_inflight must be >= 1");
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "user";
}

Role role_from_string(std::string_view s) {
  if (s == "system") return Role::system;
  if (s == "user") return Role::user;
  if (s == "assistant") return Role::assistant;
  throw SchemaError(0, "unknown role '" + std::string(s) + "'");
}

std::string_view to_string(FinishReason reason) {
  switch (reason) {
    case FinishReason::complete: return "complete";
    case FinishReason::truncated: return "truncated";
    case FinishReason::backend_error: return "backend_error";
  }
  return "backend_error";
}

FinishReason finish_reason_from_string(std::string_view s) {
  if (s == "complete") return FinishReason::complete;
  if (s == "truncated") return FinishReason::truncated;
  if (s == "backend_error") return FinishReason::backend_error;
  throw SchemaError(0, "unknown finish_reason '" + std::string(s) + "'");
}

Json messages_to_json(const std::vector<Message>& messages) {
  Json arr = Json::array();
  for (const auto& m : messages) arr.push_back({{"role", to_string(m.role)}, {"text", m.text}});
  return arr;
}

std::vector<Message> messages_from_json(const Json& j) {
  std::vector<Message> out;
  for (const auto& m : j) {
    out.push_back({role_from_string(m.at("role").get<std::string>()), m.at("text").get<std::string>()});
  }
  return out;
}

std::string message_hash(const std::vector<Message>& messages) {
  std::string buf;
  for (const auto& m : messages) {
    buf += to_string(m.role);
    buf += '\x1f';
    buf += m.text;
    buf += '\x1e';
  }
  return "h:" + sha256_hex(buf);
}

std::string request_key(const CompletionRequest& req) {
  return req.request_tag.empty() ? message_hash(req.messages) : req.request_tag;
}

}  // namespace medforge::gateway
