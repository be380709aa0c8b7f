// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/gateway/http_backend.hpp"

#include <httplib.h>

#include <chrono>
#include <cstdlib>

#include "medforge/common/error.hpp"

namespace medforge::gateway {

namespace {

std::string_view openai_role(Role role) {
  return to_string(role);  // the wire names coincide
}

}  // namespace

HttpBackend::HttpBackend(BackendConfig cfg) : cfg_(std::move(cfg)) {
  const std::string& url = cfg_.endpoint;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint must be an absolute URL: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
}

std::string HttpBackend::id() const {
  return cfg_.model.empty() ? "http:" + scheme_host_port_ : "http:" + cfg_.model;
}

Json HttpBackend::request_body(const CompletionRequest& req) const {
  Json messages = Json::array();
  for (const auto& m : req.messages) {
    messages.push_back({{"role", openai_role(m.role)}, {"content", m.text}});
  }
  Json body = Json::object();
  if (!cfg_.model.empty()) body["model"] = cfg_.model;
  body["messages"] = std::move(messages);
  body["max_tokens"] = req.max_output_tokens;
  body["temperature"] = req.temperature;
  return body;
}

CompletionResult HttpBackend::parse_response(int status, const std::string& body,
                                             const std::string& backend_id) {
  if (status == 401 || status == 403) throw AuthError("backend rejected credentials (HTTP " + std::to_string(status) + ")");
  if (status == 408 || status == 429 || status >= 500) {
    throw TransientError("backend returned HTTP " + std::to_string(status));
  }
  if (status != 200) throw BackendError("backend returned HTTP " + std::to_string(status) + ": " + body);

  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error&) {
    throw TransientError("backend returned malformed JSON");
  }
  if (!j.contains("choices") || !j["choices"].is_array() || j["choices"].empty()) {
    throw BackendError("response has no choices");
  }
  const auto& choice = j["choices"][0];
  std::string text;
  if (choice.contains("message") && choice["message"].contains("content") &&
      choice["message"]["content"].is_string()) {
    text = choice["message"]["content"].get<std::string>();
  }
  std::string finish = choice.value("finish_reason", "stop");
  if (finish == "length") return {text, FinishReason::truncated, backend_id, 0};
  if (text.empty()) throw TransientError("backend returned an empty completion");
  return {text, FinishReason::complete, backend_id, 0};
}

CompletionResult HttpBackend::call(const CompletionRequest& req) {
  httplib::Headers headers;
  if (!cfg_.auth_token_env_var.empty()) {
    const char* token = std::getenv(cfg_.auth_token_env_var.c_str());
    if (token == nullptr || *token == '\0') {
      throw AuthError("environment variable " + cfg_.auth_token_env_var + " is not set");
    }
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  httplib::Client client(scheme_host_port_);
  auto timeout = std::chrono::milliseconds(cfg_.timeout_ms);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);

  auto res = client.Post(path_, headers, request_body(req).dump(), "application/json");
  if (!res) throw TransientError("HTTP request failed: " + httplib::to_string(res.error()));
  return parse_response(res->status, res->body, id());
}

}  // namespace medforge::gateway
