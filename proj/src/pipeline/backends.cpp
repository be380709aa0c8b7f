// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/pipeline/backends.hpp"

#include "medforge/common/error.hpp"
#include "medforge/common/io.hpp"
#include "medforge/eval/oracles.hpp"
#include "medforge/gateway/http_backend.hpp"
#include "medforge/gateway/mock_backend.hpp"
#include "medforge/gateway/replay.hpp"

namespace medforge::pipeline {

std::shared_ptr<gateway::Backend> make_backend(const std::string& spec, const gateway::BackendConfig& cfg,
                                               const std::vector<eval::BenchmarkItem>* items) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
  auto need_items = [&]() -> const std::vector<eval::BenchmarkItem>& {
    if (!items) throw ConfigError("backend '" + kind + "' is only available for eval");
    return *items;
  };

  if (kind == "mock") {
    if (arg.empty()) throw ConfigError("mock backend needs a script path: mock:<script.json>");
    return std::make_shared<gateway::MockBackend>(
        gateway::MockBackend::script_from_json(Json::parse(read_text(arg))), "mock");
  }
  if (kind == "replay") {
    if (arg.empty()) throw ConfigError("replay backend needs a log path: replay:<log.jsonl>");
    return gateway::ReplayBackend::load(arg);
  }
  if (kind == "http") return std::make_shared<gateway::HttpBackend>(cfg);
  if (kind == "oracle") return eval::gold_oracle(need_items());
  if (kind == "constant") {
    if (arg.size() != 1 || arg[0] < 'A' || arg[0] > 'E') throw ConfigError("constant backend takes a letter A-E");
    return eval::constant_oracle(need_items(), static_cast<std::size_t>(arg[0] - 'A'));
  }
  if (kind == "random") {
    try {
      return eval::random_oracle(need_items(), std::stoull(arg.empty() ? "0" : arg));
    } catch (const std::logic_error&) {
      throw ConfigError("random backend takes an integer seed");
    }
  }
  throw ConfigError("unknown backend '" + spec + "'");
}

}  // namespace medforge::pipeline
