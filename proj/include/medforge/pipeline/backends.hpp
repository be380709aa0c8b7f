// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "medforge/eval/benchmark.hpp"
#include "medforge/gateway/backend.hpp"

namespace medforge::pipeline {

/// Spec forms: mock:<script.json>, replay:<log.jsonl>, http, oracle,
/// constant:<letter>, random:<seed>. The oracle family needs `items`.
std::shared_ptr<gateway::Backend> make_backend(const std::string& spec, const gateway::BackendConfig& cfg,
                                               const std::vector<eval::BenchmarkItem>* items = nullptr);

}  // namespace medforge::pipeline
