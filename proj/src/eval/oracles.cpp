// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/eval/oracles.hpp"

#include <map>

#include "medforge/common/error.hpp"
#include "medforge/common/hashing.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/eval/prompt.hpp"

namespace medforge::eval {

namespace {

using Chooser = std::function<std::size_t(const std::string& tag, const BenchmarkItem& item)>;

std::shared_ptr<gateway::Backend> make_oracle(const std::vector<BenchmarkItem>& items, std::string id,
                                              Chooser choose) {
  auto index = std::make_shared<std::map<std::string, BenchmarkItem>>();
  for (const auto& item : items) (*index)[request_tag(item)] = item;
  auto lookup = [index](const gateway::CompletionRequest& req) -> const BenchmarkItem& {
    auto it = index->find(req.request_tag);
    if (it == index->end()) throw ScriptMiss("oracle has no item for '" + req.request_tag + "'");
    return it->second;
  };
  return std::make_shared<gateway::FunctionBackend>(
      std::move(id),
      [lookup, choose](const gateway::CompletionRequest& req) {
        const auto& item = lookup(req);
        return gateway::ScriptedResponse::ok(option_letter(choose(req.request_tag, item)));
      },
      [lookup, choose](const gateway::CompletionRequest& req, const std::vector<std::string>& options) {
        const auto& item = lookup(req);
        std::vector<double> scores(options.size(), -10.0);
        scores.at(choose(req.request_tag, item)) = -0.1;
        return scores;
      });
}

}  // namespace

std::shared_ptr<gateway::Backend> gold_oracle(const std::vector<BenchmarkItem>& items) {
  return make_oracle(items, "oracle:gold",
                     [](const std::string&, const BenchmarkItem& item) { return item.gold_index; });
}

std::shared_ptr<gateway::Backend> constant_oracle(const std::vector<BenchmarkItem>& items,
                                                  std::size_t index) {
  return make_oracle(items, "oracle:constant", [index](const std::string&, const BenchmarkItem& item) {
    return std::min(index, item.options.size() - 1);
  });
}

std::shared_ptr<gateway::Backend> random_oracle(const std::vector<BenchmarkItem>& items,
                                                std::uint64_t seed) {
  return make_oracle(items, "oracle:random", [seed](const std::string& tag, const BenchmarkItem& item) {
    const std::uint64_t h = std::stoull(sha256_hex(tag).substr(0, 16), nullptr, 16);
    SeededRng rng(seed ^ h);
    return static_cast<std::size_t>(rng.uniform_index(item.options.size()));
  });
}

}  // namespace medforge::eval
