// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite. `acceptance N` runs criterion N, no argument runs all.
// Each criterion prints one PASS or FAIL line.

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "medforge/chat/transcript.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/io.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/corpus/conversation.hpp"
#include "medforge/corpus/mix.hpp"
#include "medforge/corpus/records.hpp"
#include "medforge/corpus/stats.hpp"
#include "medforge/eval/benchmark.hpp"
#include "medforge/eval/harness.hpp"
#include "medforge/eval/oracles.hpp"
#include "medforge/gateway/gateway.hpp"
#include "medforge/gateway/mock_backend.hpp"
#include "medforge/translate/loop.hpp"
#include "medforge/translate/protocol.hpp"

namespace fs = std::filesystem;
using namespace medforge;
using Steady = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void check(bool ok, std::string what) {
    if (!ok) {
      pass = false;
      notes.push_back(std::move(what));
    }
  }
};

double seconds_since(Steady::time_point t0) {
  return std::chrono::duration<double>(Steady::now() - t0).count();
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / fmt::format("medforge-accept-{}-{}", ::getpid(), name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// ---- translation loop helpers ------------------------------------------

translate::TranslationUnit loop_unit(const std::string& id) {
  translate::TranslationUnit u;
  u.unit_id = id;
  u.source_id = id;
  u.english_fields = {{"question", "Is aspirin an NSAID?"}, {"answer", "Yes."}};
  return u;
}

gateway::Script loop_script(const translate::TranslationUnit& u, const std::vector<int>& scores) {
  using gateway::ScriptedResponse;
  auto draft = [&](int round) {
    translate::Fields ar;
    for (const auto& f : u.english_fields) ar.push_back({f.name, fmt::format("مسودة {} {}", round, f.text)});
    return translate::encode_fields(ar);
  };
  gateway::Script s;
  s[u.unit_id + "/translate/1"] = {ScriptedResponse::ok(draft(1))};
  for (std::size_t k = 0; k < scores.size(); ++k) {
    const int round = static_cast<int>(k) + 1;
    s[fmt::format("{}/score/{}", u.unit_id, round)] = {ScriptedResponse::ok(fmt::format("Score: {}. ok", scores[k]))};
    if (round > 1) s[fmt::format("{}/refine/{}", u.unit_id, round)] = {ScriptedResponse::ok(draft(round))};
  }
  return s;
}

translate::TranslationUnit run_loop(const std::vector<int>& scores, int threshold, int max_rounds) {
  auto u = loop_unit("unit");
  auto mock = std::make_shared<gateway::MockBackend>(loop_script(u, scores));
  gateway::BackendConfig cfg;
  cfg.max_retries = 0;
  gateway::Gateway gw(mock, cfg);
  translate::Translator tr(gw);
  translate::LoopConfig lc;
  lc.threshold = threshold;
  lc.max_rounds = max_rounds;
  tr.run_iterative(u, lc);
  return u;
}

// ---- criteria ------------------------------------------------------------

Outcome criterion_1() {
  Outcome o;
  const auto t0 = Steady::now();
  auto a = run_loop({60, 75, 90}, 80, 5);
  o.check(a.status == translate::UnitStatus::auto_accepted, "[60,75,90] not auto_accepted");
  o.check(a.rounds.size() == 3, fmt::format("[60,75,90] took {} rounds", a.rounds.size()));
  auto b = run_loop({60, 70}, 80, 2);
  o.check(b.status == translate::UnitStatus::needs_review, "[60,70] not needs_review");
  o.check(b.rounds.size() == 2, fmt::format("[60,70] took {} rounds", b.rounds.size()));
  o.check(run_loop({60, 75, 90}, 80, 5) == a, "rerun differs");
  const double s = seconds_since(t0);
  o.check(s < 1.0, fmt::format("runtime {:.3f}s", s));
  return o;
}

Outcome criterion_2() {
  Outcome o;
  auto u = run_loop({80}, 80, 3);
  o.check(u.status == translate::UnitStatus::auto_accepted, "score 80 at threshold 80 not accepted");
  o.check(u.rounds.size() == 1, fmt::format("took {} rounds", u.rounds.size()));
  return o;
}

Outcome criterion_3() {
  Outcome o;
  std::vector<translate::TranslationUnit> accepted;
  for (int i = 0; i < 100; ++i) {
    auto u = loop_unit(fmt::format("unit-{:03d}", i));
    u.status = translate::UnitStatus::auto_accepted;
    accepted.push_back(u);
  }
  translate::LoopConfig cfg;
  cfg.audit_rate = 0.05;
  cfg.rng_seed = 20240101;
  const auto first = translate::audit_sample(accepted, cfg);
  o.check(first.size() == 5, fmt::format("selected {}", first.size()));
  o.check(std::set<std::string>(first.begin(), first.end()).size() == first.size(), "duplicate selection");
  for (int r = 0; r < 10; ++r) o.check(translate::audit_sample(accepted, cfg) == first, fmt::format("rerun {} differs", r));
  return o;
}

corpus::InstructionSample qa_sample(const std::string& id, corpus::Language lang) {
  corpus::SourceRecord r;
  r.record_id = id;
  r.source_id = id;
  r.kind = corpus::Kind::QA;
  r.language = lang;
  r.origin = corpus::Origin::MedicationQA;
  r.payload = corpus::QaPair{"What is the usual adult dose of " + id + "?", "It depends on the indication."};
  return corpus::render_conversation(r);
}

Outcome criterion_4() {
  Outcome o;
  std::vector<corpus::InstructionSample> en, ar;
  for (int i = 0; i < 1000; ++i) en.push_back(qa_sample(fmt::format("en{}", i), corpus::Language::en));
  for (int i = 0; i < 800; ++i) ar.push_back(qa_sample(fmt::format("ar{}", i), corpus::Language::ar));
  corpus::MixOptions opt;
  opt.seed = 42;
  auto mixed = corpus::mix_bilingual(en, ar, opt);
  auto manifest = corpus::compute_stats(mixed.corpus, opt.tokenizer_id, opt.seed, 2);
  const auto ratio = manifest.ar_to_en_ratio;
  o.check(ratio.has_value() && std::abs(*ratio - 0.5) <= 0.01,
          fmt::format("ratio {}", ratio ? fmt::format("{:.4f}", *ratio) : "null"));
  o.check(manifest.by_language[1].samples == 500, fmt::format("{} Arabic samples", manifest.by_language[1].samples));
  auto again = corpus::mix_bilingual(en, ar, opt);
  o.check(again.corpus == mixed.corpus, "rerun with the same seed differs");
  return o;
}

Outcome criterion_5() {
  Outcome o;
  SeededRng rng(555);
  std::size_t samples = 0, violations = 0;
  for (int i = 0; i < 1200; ++i) {
    corpus::SourceRecord r;
    r.record_id = fmt::format("r{}", i);
    r.source_id = r.record_id;
    switch (rng.uniform_index(3)) {
      case 0:
        r.kind = corpus::Kind::QA;
        r.origin = corpus::Origin::LiveQA;
        r.payload = corpus::QaPair{fmt::format("question {}", rng.uniform_index(1000)), "answer"};
        break;
      case 1: {
        r.kind = corpus::Kind::Chat;
        chat::ChatTranscript t;
        t.grounding_id = r.record_id;
        for (std::size_t k = 0, n = 1 + rng.uniform_index(6); k < n; ++k) {
          t.turns.push_back({chat::Speaker::patient, fmt::format("p{}", k)});
          t.turns.push_back({chat::Speaker::doctor, fmt::format("d{}", k)});
        }
        r.payload = t;
        break;
      }
      default: {
        r.kind = corpus::Kind::MCQA;
        r.origin = corpus::Origin::MedQA;
        chat::McqaItem m;
        m.item_id = r.record_id;
        m.question = fmt::format("Question {}?", i);
        const std::size_t n = 2 + rng.uniform_index(4);
        for (std::size_t k = 0; k < n; ++k) m.options.push_back({std::string(1, static_cast<char>('A' + k)), fmt::format("opt {}", k)});
        m.gold_label = m.options[rng.uniform_index(n)].label;
        r.payload = m;
      }
    }
    auto s = corpus::sample_from_json(corpus::to_json(corpus::render_conversation(r)));
    ++samples;
    for (std::size_t k = 0; k < s.conversations.size(); ++k) {
      if (s.loss_mask[k] != (s.conversations[k].from == corpus::From::ai)) ++violations;
    }
  }
  o.check(samples >= 1000, fmt::format("{} samples", samples));
  o.check(violations == 0, fmt::format("{} violations", violations));
  return o;
}

Outcome criterion_6() {
  Outcome o;
  auto s = qa_sample("fmt", corpus::Language::en);
  o.check(s.conversations.size() == 2, "QA sample is not two entries");
  const Json j = corpus::to_json(s);
  const std::string text = j.dump();
  o.check(text.find(R"("conversations":[{"from":"human","value":)") != std::string::npos,
          "no conversations/from/value structure");
  o.check(text.find(R"({"from":"AI","value":)") != std::string::npos, "assistant turn not tagged AI");
  for (const auto& turn : j["conversations"]) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : turn.items()) keys.push_back(k);
    o.check(keys == std::vector<std::string>{"from", "value"}, "turn keys differ from from/value");
  }
  auto back = corpus::sample_from_json(Json::parse(text));
  o.check(back == s, "parse(render) lost information");
  o.check(corpus::to_json(back).dump() == text, "re-serialization differs");
  return o;
}

struct PrintedRow {
  std::string label;
  std::array<double, 9> values;
  double printed_avg;
};

// Reference rows: nine column scores and the rounded average printed beside them.
const std::vector<PrintedRow>& printed_rows() {
  static const std::vector<PrintedRow> rows = {
      {"bilingual/Jais-30B", {57.4, 55.2, 46.2, 55.0, 46.0, 48.9, 40.2, 31.0, 75.5}, 50.6},
      {"bilingual/Mixtral-8x7B", {59.1, 57.6, 52.6, 59.5, 53.3, 54.4, 43.2, 40.6, 74.7}, 55.0},
      {"bilingual/moe-bilingual", {70.6, 72.2, 59.3, 74.0, 64.2, 59.6, 55.8, 54.0, 78.6}, 65.4},
      {"arabic/Jais-30B", {52.1, 50.7, 40.5, 49.0, 39.3, 43.0, 37.0, 28.8, 74.6}, 46.1},
      {"arabic/moe-arabic", {60.0, 54.9, 55.5, 58.0, 58.1, 49.6, 46.0, 40.2, 76.6}, 55.4},
      {"arabic/moe-bilingual", {63.8, 57.6, 52.6, 64.0, 52.9, 50.4, 49.1, 47.3, 78.4}, 56.5},
      {"english/PMC-LLaMA-13B", {63.0, 59.7, 52.6, 70.0, 64.3, 61.5, 50.5, 47.2, 75.6}, 60.5},
      {"english/Med42-70B", {75.9, 84.0, 69.9, 83.0, 78.7, 64.4, 61.9, 61.3, 77.2}, 72.9},
      {"english/Clinical Camel-70B", {69.8, 79.2, 67.0, 69.0, 71.3, 62.2, 47.0, 53.4, 74.3}, 65.9},
      {"english/Meditron-70B", {72.3, 82.5, 62.8, 77.8, 77.9, 62.7, 65.1, 60.7, 80.0}, 71.3},
      {"english/moe-bilingual", {78.9, 86.1, 68.2, 85.0, 80.5, 74.1, 62.7, 62.8, 80.2}, 75.4},
  };
  return rows;
}

Outcome criterion_7() {
  Outcome o;
  const auto t0 = Steady::now();
  std::vector<eval::ReferenceRow> refs;
  for (const auto& r : printed_rows()) {
    eval::Row row;
    for (std::size_t i = 0; i < 9; ++i) row[i] = r.values[i];
    refs.push_back({r.label, row});
  }
  const std::string md = eval::render_rows(refs);
  for (std::size_t i = 0; i < refs.size(); ++i) {
    const double avg = eval::row_average(refs[i].percent);
    const auto& r = printed_rows()[i];
    const bool ok = std::abs(avg - r.printed_avg) <= 0.1 + 1e-9;
    const bool rendered = md.find(fmt::format("| {} |", r.label)) != std::string::npos &&
                          md.find(fmt::format(" {:.1f} |\n", avg)) != std::string::npos;
    std::cout << fmt::format("  {:32} mean {:6.2f} printed {:5.1f} {}\n", r.label, avg, r.printed_avg,
                             ok ? "ok" : "MISMATCH");
    o.check(ok, fmt::format("{}: mean {:.2f} vs printed {:.1f}", r.label, avg, r.printed_avg));
    o.check(rendered, r.label + " not rendered");
  }
  const double s = seconds_since(t0);
  o.check(s < 1.0, fmt::format("runtime {:.3f}s", s));
  return o;
}

eval::BenchmarkItem four_option(std::string id, eval::Dataset d, std::size_t gold) {
  eval::BenchmarkItem it;
  it.item_id = std::move(id);
  it.dataset = d;
  it.question = "Which structure is most likely involved?";
  if (d == eval::Dataset::PubMedQA) {
    it.context = "Abstract text.";
    it.options = {"yes", "no", "maybe"};
    it.gold_index = gold % 3;
  } else {
    it.options = {"first", "second", "third", "fourth"};
    it.gold_index = gold % 4;
  }
  return it;
}

eval::EvalReport run_eval(const std::vector<eval::BenchmarkItem>& items, std::shared_ptr<gateway::Backend> b) {
  gateway::BackendConfig cfg;
  cfg.max_retries = 0;
  cfg.max_inflight = 8;
  gateway::Gateway gw(std::move(b), cfg);
  eval::EvalOptions opt;
  opt.threads = 4;
  return eval::evaluate(items, gw, opt, "oracle").report;
}

Outcome criterion_8() {
  Outcome o;
  const auto t0 = Steady::now();
  std::vector<eval::BenchmarkItem> all;
  for (auto d : eval::kAllDatasets)
    for (std::size_t i = 0; i < 12; ++i) all.push_back(four_option(fmt::format("{}-{}", eval::to_string(d), i), d, i));
  auto gold = run_eval(all, eval::gold_oracle(all));
  for (auto v : gold.row(corpus::Language::en)) o.check(v && *v == 1.0, "gold oracle below 1.0");

  std::vector<eval::BenchmarkItem> balanced;
  for (std::size_t i = 0; i < 400; ++i) balanced.push_back(four_option(fmt::format("b{}", i), eval::Dataset::MedQA, i));
  auto first = run_eval(balanced, eval::constant_oracle(balanced, 0));
  const double c = first.columns[0][static_cast<int>(eval::Dataset::MedQA)].accuracy();
  o.check(c == 0.25, fmt::format("constant-first accuracy {}", c));

  std::vector<eval::BenchmarkItem> many;
  SeededRng rng(8);
  for (std::size_t i = 0; i < 4000; ++i)
    many.push_back(four_option(fmt::format("r{}", i), eval::Dataset::MedMCQA, rng.uniform_index(4)));
  auto rnd = run_eval(many, eval::random_oracle(many, 2024));
  const double r = rnd.columns[0][static_cast<int>(eval::Dataset::MedMCQA)].accuracy();
  std::cout << fmt::format("  random oracle accuracy over 4000 items: {:.4f}\n", r);
  o.check(std::abs(r - 0.25) <= 0.02, fmt::format("random accuracy {:.4f}", r));
  const double s = seconds_since(t0);
  o.check(s < 30.0, fmt::format("runtime {:.1f}s", s));
  return o;
}

// Sizes of the six MMLU medical subsets; they sum to 1089.
const std::map<eval::Dataset, std::size_t>& suite_sizes() {
  static const std::map<eval::Dataset, std::size_t> sizes = {
      {eval::Dataset::MMLU_CliKG, 265}, {eval::Dataset::MMLU_CBio, 144}, {eval::Dataset::MMLU_CMed, 173},
      {eval::Dataset::MMLU_MedGen, 100}, {eval::Dataset::MMLU_ProMed, 272}, {eval::Dataset::MMLU_Ana, 135},
      {eval::Dataset::MedMCQA, 4183},    {eval::Dataset::MedQA, 1273},      {eval::Dataset::PubMedQA, 500}};
  return sizes;
}

void write_dataset(const fs::path& dir, eval::Dataset d, std::size_t n) {
  std::vector<eval::BenchmarkItem> items;
  for (std::size_t i = 0; i < n; ++i) items.push_back(four_option(fmt::format("{}", i), d, i));
  std::vector<Json> lines;
  for (const auto& it : items) lines.push_back(eval::to_json(it));
  write_jsonl_atomic(dir / "en" / (std::string(eval::to_string(d)) + ".jsonl"), lines);
}

template <class Fn>
bool throws_count_mismatch(Fn fn) {
  try {
    fn();
  } catch (const CountMismatch&) {
    return true;
  } catch (...) {
    return false;
  }
  return false;
}

Outcome criterion_9() {
  Outcome o;
  const auto dir = scratch("suite");
  std::size_t total = 0;
  for (const auto& [d, n] : suite_sizes()) {
    write_dataset(dir, d, n);
    total += n;
  }
  o.check(total == 7045, fmt::format("fixture totals {}", total));
  try {
    auto items = eval::load_suite(dir, true);
    o.check(items.size() == 7045, fmt::format("loaded {}", items.size()));
  } catch (const Error& e) {
    o.check(false, std::string("full suite rejected: ") + e.what());
  }
  for (const auto& [d, n] : suite_sizes()) {
    for (std::size_t bad : {n - 1, n + 1}) {
      write_dataset(dir, d, bad);
      o.check(throws_count_mismatch([&] { eval::load_suite(dir, true); }),
              fmt::format("{} with {} items accepted", eval::to_string(d), bad));
      if (!eval::is_mmlu(d)) {
        const auto path = dir / "en" / (std::string(eval::to_string(d)) + ".jsonl");
        o.check(throws_count_mismatch([&] { eval::load_benchmark(path, d, corpus::Language::en, true); }),
                fmt::format("{} loader accepted {}", eval::to_string(d), bad));
      }
    }
    write_dataset(dir, d, n);
  }
  fs::remove_all(dir);
  return o;
}

// ---- CLI-driven criteria --------------------------------------------------

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = fmt::format("'{}' {} > '{}' 2>&1", MEDFORGE_CLI_PATH, args, log.string());
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), root).generic_string();
    if (rel.rfind("logs/", 0) == 0) continue;  // wall-clock latencies and timestamps
    files[rel] = read_text(e.path());
  }
  return files;
}

void compare_trees(Outcome& o, const fs::path& a, const fs::path& b, const std::string& what) {
  const auto x = snapshot_tree(a), y = snapshot_tree(b);
  o.check(x.size() == y.size(), fmt::format("{}: {} vs {} files", what, x.size(), y.size()));
  std::size_t differing = 0;
  for (const auto& [rel, bytes] : x) {
    auto it = y.find(rel);
    if (it == y.end() || it->second != bytes) {
      if (++differing <= 5) o.check(false, fmt::format("{}: {} differs", what, rel));
    }
  }
  o.check(differing == 0, fmt::format("{}: {} files differ", what, differing));
  std::cout << fmt::format("  {}: compared {} files, {} differ\n", what, x.size(), differing);
}

Outcome criterion_10() {
  Outcome o;
  const auto root = scratch("demo");
  const auto t0 = Steady::now();
  const int rc1 = run_cli(fmt::format("demo --seed 7 --out '{}'", (root / "a").string()), root / "a.log");
  const int rc2 = run_cli(fmt::format("demo --seed 7 --out '{}'", (root / "b").string()), root / "b.log");
  const double s = seconds_since(t0);
  o.check(rc1 == 0 && rc2 == 0, fmt::format("demo exit codes {} {}", rc1, rc2));
  if (rc1 != 0 || rc2 != 0) return o;
  std::cout << fmt::format("  two demo runs took {:.2f}s\n", s);
  o.check(s < 60.0, fmt::format("runtime {:.1f}s", s));

  const auto a = root / "a";
  std::size_t chats = 0;
  for (const auto& l : read_jsonl(a / "chats" / "transcripts.jsonl")) {
    auto t = chat::transcript_from_json(l.value);
    try {
      chat::validate_turns(t.turns);
      ++chats;
    } catch (const Error& e) {
      o.check(false, std::string("invalid transcript: ") + e.what());
    }
  }
  o.check(chats >= 50, fmt::format("{} valid chats", chats));

  std::size_t translated = 0;
  for (const char* f : {"units.jsonl", "bench_units.jsonl"}) {
    for (const auto& l : read_jsonl(a / "translate" / f)) {
      auto u = translate::unit_from_json(l.value);
      if (u.status != translate::UnitStatus::pending && !u.rounds.empty()) ++translated;
    }
  }
  o.check(translated >= 30, fmt::format("{} units through the loop", translated));

  auto manifest = Json::parse(read_text(a / "corpus" / "manifest.json"));
  const auto& ratio = manifest["ar_to_en_ratio"];
  o.check(ratio.is_number() && std::abs(ratio.get<double>() - 0.5) <= 0.01, "corpus ratio outside 1:2 +/- 0.01");
  std::vector<corpus::InstructionSample> corpus_samples;
  for (const auto& l : read_jsonl(a / "corpus" / "corpus.jsonl")) corpus_samples.push_back(corpus::sample_from_json(l.value));
  auto recomputed = corpus::compute_stats(corpus_samples, manifest["tokenizer_id"].get<std::string>(),
                                          manifest["rng_seed"].get<std::uint64_t>());
  Json expect = corpus::to_json(recomputed);
  Json stored = manifest;
  stored.erase("provenance");
  stored.erase("mix");
  o.check(stored == expect, "manifest does not match stats recomputed from corpus.jsonl");

  auto report = Json::parse(read_text(a / "eval" / "report.json"));
  o.check(report["bilingual"]["avg"] == 1.0, "gold-oracle eval AVG is not 1.0");
  o.check(report["languages"]["en"]["avg"] == 1.0 && report["languages"]["ar"]["avg"] == 1.0,
          "per-language AVG is not 1.0");

  compare_trees(o, a, root / "b", "run a vs run b");
  const int rcv = run_cli(fmt::format("verify '{}'", a.string()), root / "verify.log");
  o.check(rcv == 0, "verify failed on demo output");
  fs::remove_all(root);
  return o;
}

Outcome criterion_11() {
  Outcome o;
  const auto root = scratch("replay");
  const auto out = root / "out";
  int rc = run_cli(fmt::format("demo --seed 7 --out '{}'", out.string()), root / "first.log");
  o.check(rc == 0, "initial demo failed");
  if (rc != 0) return o;
  fs::copy_file(out / "logs" / "replay.jsonl", root / "replay.jsonl");
  fs::rename(out, root / "reference");
  o.check(!fs::exists(out), "outputs still present");

  rc = run_cli(fmt::format("demo --seed 7 --out '{}' --replay '{}'", out.string(), (root / "replay.jsonl").string()),
               root / "replay.log");
  o.check(rc == 0, fmt::format("replay demo exit code {}", rc));
  if (rc != 0) {
    std::cout << read_text(root / "replay.log");
    return o;
  }
  compare_trees(o, root / "reference", out, "reference vs replay");
  fs::remove_all(root);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "loop semantics", criterion_1},
      {2, "threshold boundary accepts", criterion_2},
      {3, "audit sample determinism", criterion_3},
      {4, "ar:en ratio law", criterion_4},
      {5, "loss mask law", criterion_5},
      {6, "conversation format round trip", criterion_6},
      {7, "AVG reproduction for reference rows", criterion_7},
      {8, "oracle accuracies", criterion_8},
      {9, "strict benchmark counts", criterion_9},
      {10, "end-to-end mock demo", criterion_10},
      {11, "replay reproduces artifacts", criterion_11},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failures = 0;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    std::cout << fmt::format("{} criterion {}: {}", o.pass ? "PASS" : "FAIL", c.id, c.title);
    if (!o.pass) {
      std::cout << " (";
      for (std::size_t i = 0; i < o.notes.size(); ++i) std::cout << (i ? "; " : "") << o.notes[i];
      std::cout << ")";
    }
    std::cout << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
