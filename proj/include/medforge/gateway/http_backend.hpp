// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "medforge/common/json.hpp"
#include "medforge/gateway/backend.hpp"

namespace medforge::gateway {

/// OpenAI-compatible chat-completions client. `endpoint` is the full URL,
/// e.g. "https://api.openai.com/v1/chat/completions". The bearer token is
/// read from the environment variable named by auth_token_env_var at call
/// time; an empty variable name sends no Authorization header.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig cfg);

  std::string id() const override;
  CompletionResult call(const CompletionRequest& req) override;

  /// Request body sent for `req`.
  Json request_body(const CompletionRequest& req) const;

  /// Maps an HTTP status and body to a result or an exception.
  static CompletionResult parse_response(int status, const std::string& body,
                                         const std::string& backend_id);

 private:
  BackendConfig cfg_;
  std::string scheme_host_port_;
  std::string path_;
};

}  // namespace medforge::gateway
