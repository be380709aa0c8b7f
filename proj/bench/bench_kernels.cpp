// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <fmt/format.h>

#include "medforge/common/rng.hpp"
#include "medforge/corpus/tokenizer.hpp"
#include "medforge/eval/harness.hpp"
#include "medforge/eval/oracles.hpp"
#include "medforge/gateway/gateway.hpp"

using namespace medforge;

namespace {

const std::vector<std::string>& texts() {
  static const std::vector<std::string> t = [] {
    std::vector<std::string> out;
    SeededRng rng(1);
    for (int i = 0; i < 20000; ++i) {
      out.push_back(fmt::format("Patient {} reports chest pain for {} days; troponin {} ng/L. ألم في الصدر منذ {} أيام.",
                                i, rng.uniform_index(14), rng.uniform_index(500), rng.uniform_index(14)));
    }
    return out;
  }();
  return t;
}

std::vector<std::string_view> views() { return {texts().begin(), texts().end()}; }

void BM_CountTokensSerial(benchmark::State& state) {
  auto v = views();
  for (auto _ : state) benchmark::DoNotOptimize(corpus::count_tokens_batch_serial(v, corpus::kDefaultTokenizer));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(v.size()));
}

void BM_CountTokensParallel(benchmark::State& state) {
  auto v = views();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(corpus::count_tokens_batch(v, corpus::kDefaultTokenizer, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(v.size()));
}

const std::vector<eval::BenchmarkItem>& items() {
  static const std::vector<eval::BenchmarkItem> it = [] {
    std::vector<eval::BenchmarkItem> out;
    for (std::size_t i = 0; i < 2000; ++i) {
      eval::BenchmarkItem b;
      b.item_id = std::to_string(i);
      b.dataset = eval::Dataset::MedMCQA;
      b.question = "Which of the following is the most likely diagnosis?";
      b.options = {"Gout", "Septic arthritis", "Pseudogout", "Reactive arthritis"};
      b.gold_index = i % 4;
      out.push_back(b);
    }
    return out;
  }();
  return it;
}

void BM_EvaluateSerial(benchmark::State& state) {
  gateway::Gateway gw(eval::random_oracle(items(), 1), gateway::BackendConfig{});
  for (auto _ : state) benchmark::DoNotOptimize(eval::evaluate_serial(items(), gw, eval::EvalOptions{}, "b"));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(items().size()));
}

void BM_EvaluateParallel(benchmark::State& state) {
  gateway::BackendConfig cfg;
  cfg.max_inflight = static_cast<int>(state.range(0));
  gateway::Gateway gw(eval::random_oracle(items(), 1), cfg);
  eval::EvalOptions opt;
  opt.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(eval::evaluate(items(), gw, opt, "b"));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(items().size()));
}

}  // namespace

BENCHMARK(BM_CountTokensSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountTokensParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
