// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/pipeline/demo.hpp"

#include <chrono>
#include <fmt/format.h>
#include <map>

#include "medforge/chat/forge.hpp"
#include "medforge/common/clock.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/io.hpp"
#include "medforge/common/parallel.hpp"
#include "medforge/corpus/conversation.hpp"
#include "medforge/corpus/lineage.hpp"
#include "medforge/corpus/mix.hpp"
#include "medforge/corpus/records.hpp"
#include "medforge/corpus/stats.hpp"
#include "medforge/corpus/tuning.hpp"
#include "medforge/eval/harness.hpp"
#include "medforge/eval/lineage.hpp"
#include "medforge/eval/oracles.hpp"
#include "medforge/gateway/gateway.hpp"
#include "medforge/gateway/mock_backend.hpp"
#include "medforge/gateway/replay.hpp"
#include "medforge/pipeline/fixtures.hpp"
#include "medforge/pipeline/provenance.hpp"
#include "medforge/review/store.hpp"
#include "medforge/translate/loop.hpp"

namespace medforge::pipeline {

namespace fs = std::filesystem;
using translate::TranslationUnit;
using translate::UnitStatus;

namespace {

constexpr int kMaxRegen = 2;
constexpr const char* kReviewer = "demo-reviewer";

void write_json(const fs::path& path, const Json& j) {
  fs::create_directories(path.parent_path());
  write_text_atomic(path, j.dump(2) + "\n");
}

template <class T>
std::vector<Json> to_lines(const std::vector<T>& xs) {
  std::vector<Json> out;
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

void write_lines(const fs::path& path, const std::vector<Json>& lines) {
  fs::create_directories(path.parent_path());
  write_jsonl_atomic(path, lines);
}

Json with_stamp(Json j, const Json& stamp) {
  j["provenance"] = stamp;
  return j;
}

}  // namespace

const std::vector<std::string>& demo_artifacts() {
  static const std::vector<std::string> names = {"fixtures", "scripts", "chats",  "translate", "review",
                                                 "corpus",   "bench",   "eval",   "logs",      "config.json",
                                                 "provenance.json"};
  return names;
}

Json run_demo(const DemoOptions& opt) {
  const auto started = std::chrono::steady_clock::now();
  std::shared_ptr<gateway::ReplayBackend> replay;
  if (opt.replay_log) replay = gateway::ReplayBackend::load(*opt.replay_log);

  const fs::path out = opt.out;
  for (const auto& name : demo_artifacts()) fs::remove_all(out / name);
  fs::create_directories(out / "logs");
  const int threads = opt.threads > 0 ? opt.threads : default_threads();

  translate::LoopConfig loop;
  loop.threshold = 80;
  loop.max_rounds = 3;
  loop.audit_rate = 0.05;
  loop.rng_seed = opt.seed;
  corpus::MixOptions mix_opts;
  mix_opts.target_ratio = corpus::parse_ratio("1:2");
  mix_opts.seed = opt.seed;
  const std::string tokenizer(corpus::kDefaultTokenizer);

  const Json config = {{"pipeline", "demo"},
                       {"seed", opt.seed},
                       {"threshold", loop.threshold},
                       {"max_rounds", loop.max_rounds},
                       {"audit_rate", loop.audit_rate},
                       {"ratio", "1:2"},
                       {"ratio_mode", "samples"},
                       {"ratio_tolerance", mix_opts.tolerance},
                       {"tokenizer", tokenizer},
                       {"max_regen", kMaxRegen},
                       {"eval_mode", "extract"},
                       {"assistant_tag", "AI"}};
  const Json stamp = provenance_stamp(config);

  AppendLog run_log(out / "logs" / "run.jsonl");
  run_log.append({{"event", "config"}, {"config", config}, {"backend", replay ? "replay" : "mock"},
                  {"threads", threads}});

  auto log = std::make_shared<gateway::ReplayLog>(out / "logs" / "replay.jsonl");
  gateway::BackendConfig bcfg;
  bcfg.max_inflight = std::max(threads, 1);
  auto no_sleep = [](std::chrono::milliseconds) {};
  auto gateway_for = [&](std::shared_ptr<gateway::Backend> b) {
    return std::make_unique<gateway::Gateway>(replay ? replay : std::move(b), bcfg, log, no_sleep);
  };

  // Sources.
  const Fixtures fx = demo_fixtures();
  write_lines(out / "fixtures" / "mcqa.jsonl", fx.mcqa_lines);
  write_lines(out / "fixtures" / "qa.jsonl", fx.qa_lines);
  const auto mcqa = corpus::ingest_text(to_jsonl(fx.mcqa_lines), corpus::Origin::MedMCQA).records;
  const auto qa = corpus::ingest_text(to_jsonl(fx.qa_lines), corpus::Origin::MedicationQA).records;
  std::vector<chat::McqaItem> items;
  for (const auto& r : mcqa) items.push_back(std::get<chat::McqaItem>(r.payload));

  // Chats.
  gateway::Script chat_script;
  add_chat_script(chat_script, items);
  write_json(out / "scripts" / "chat_script.json", gateway::MockBackend::script_to_json(chat_script));
  auto chat_gw = gateway_for(std::make_shared<gateway::MockBackend>(chat_script));
  chat::ChatForge forge(*chat_gw, chat::ChatTemplate::defaults(), tokenizer);
  const auto batch = chat::synthesize_batch(forge, items, kMaxRegen, threads);
  std::vector<chat::ChatTranscript> transcripts;
  std::vector<Json> chat_failures;
  std::size_t regenerated = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (batch.transcripts[i]) {
      transcripts.push_back(*batch.transcripts[i]);
      if (batch.transcripts[i]->attempts > 1) ++regenerated;
    } else {
      chat_failures.push_back({{"item_id", items[i].item_id}, {"error", *batch.errors[i]}});
    }
  }
  write_lines(out / "chats" / "transcripts.jsonl", to_lines(transcripts));
  const auto chats = corpus::ingest_text(to_jsonl(to_lines(transcripts)), corpus::Origin::synthesized).records;
  write_json(out / "chats" / "report.json",
             with_stamp({{"requested", items.size()},
                         {"synthesized", transcripts.size()},
                         {"regenerated", regenerated},
                         {"mean_turns", chat::mean_turns(transcripts)},
                         {"failures", chat_failures}},
                        stamp));

  // Translation loop.
  std::vector<corpus::SourceRecord> english;
  english.insert(english.end(), mcqa.begin(), mcqa.end());
  english.insert(english.end(), qa.begin(), qa.end());
  english.insert(english.end(), chats.begin(), chats.end());
  std::map<std::string, const corpus::SourceRecord*> by_id;
  for (const auto& r : english) by_id[r.record_id] = &r;

  std::vector<TranslationUnit> units;
  for (const auto& r : mcqa) units.push_back(corpus::unit_from_record(r));
  for (const auto& r : qa) units.push_back(corpus::unit_from_record(r));
  for (std::size_t i = 0; i < chats.size() && i < 20; ++i) units.push_back(corpus::unit_from_record(chats[i]));
  std::vector<TranslationUnit> bench_units;
  for (const auto& item : fx.benchmark_en) bench_units.push_back(eval::unit_from_item(item));

  gateway::Script tr_script;
  add_translation_script(tr_script, units);
  add_translation_script(tr_script, bench_units, true);
  write_json(out / "scripts" / "translate_script.json", gateway::MockBackend::script_to_json(tr_script));
  auto tr_gw = gateway_for(std::make_shared<gateway::MockBackend>(tr_script));
  translate::Translator translator(*tr_gw, translate::PromptTemplates::defaults(), "mock-judge");
  auto outcome = translate::run_batch(translator, units, loop, threads);
  auto bench_outcome = translate::run_batch(translator, bench_units, loop, threads);
  for (const auto* o : {&outcome, &bench_outcome}) {
    for (std::size_t i = 0; i < o->errors.size(); ++i) {
      if (o->errors[i]) throw InvalidState("unit " + o->units[i].unit_id + " failed: " + o->errors[i]->dump());
    }
  }
  units = std::move(outcome.units);
  bench_units = std::move(bench_outcome.units);

  std::vector<TranslationUnit> accepted;
  std::size_t needs_review = 0;
  for (const auto& u : units) {
    if (u.status == UnitStatus::auto_accepted) accepted.push_back(u);
    if (u.status == UnitStatus::needs_review) ++needs_review;
  }
  const auto audited = translate::audit_sample(accepted, loop);
  write_lines(out / "translate" / "units.jsonl", to_lines(units));
  write_lines(out / "translate" / "bench_units.jsonl", to_lines(bench_units));
  write_text_atomic(out / "translate" / "calibration.csv", translate::calibration_csv(units));
  write_json(out / "translate" / "audit.json",
             with_stamp({{"auto_accepted", accepted.size()}, {"needs_review", needs_review}, {"audited", audited}},
                        stamp));

  // Review.
  review::ReviewStore store(out / "review", std::make_shared<LogicalClock>());
  store.import_units(units);
  for (const auto& u : units) {
    if (u.status == UnitStatus::needs_review) store.enqueue(u.unit_id, review::Reason::below_threshold);
  }
  for (const auto& id : audited) store.enqueue(id, review::Reason::random_audit);
  std::size_t below = 0;
  while (true) {
    const auto tasks = store.list_tasks({review::TaskState::open, std::nullopt, 1, review::kMaxPageSize});
    if (tasks.tasks.empty()) break;
    for (const auto& view : tasks.tasks) {
      const auto& t = view.task;
      store.claim(t.task_id, kReviewer);
      if (t.reason == review::Reason::random_audit || below % 3 == 1) {
        store.submit_decision(t.task_id, review::Verdict::approve, std::nullopt, kReviewer);
      } else if (below % 3 == 0) {
        auto edited = view.unit.arabic_fields;
        for (auto& f : edited) f.text += " (مراجعة بشرية)";
        store.submit_decision(t.task_id, review::Verdict::edit, edited, kReviewer);
      } else {
        store.submit_decision(t.task_id, review::Verdict::reject, std::nullopt, kReviewer);
      }
      if (t.reason == review::Reason::below_threshold) ++below;
    }
  }
  store.snapshot();
  const auto reviewed = store.units();
  const auto review_stats = review::to_json(store.stats());

  // Corpus.
  std::vector<corpus::InstructionSample> en_samples;
  std::vector<corpus::InstructionSample> ar_samples;
  for (const auto& r : english) en_samples.push_back(corpus::render_conversation(r));
  for (const auto& u : reviewed) {
    if (!translate::eligible_for_corpus(u)) continue;
    ar_samples.push_back(corpus::render_conversation(corpus::arabic_record_from_unit(u, *by_id.at(u.source_id))));
  }
  const auto mixed = corpus::mix_bilingual(en_samples, ar_samples, mix_opts);
  std::vector<Json> corpus_lines;
  for (const auto& s : mixed.corpus) corpus_lines.push_back(corpus::to_json(s));
  write_lines(out / "corpus" / "corpus.jsonl", corpus_lines);
  Json manifest = corpus::to_json(corpus::compute_stats(mixed.corpus, tokenizer, opt.seed, threads));
  manifest["mix"] = {{"target_ratio", mix_opts.target_ratio},
                     {"achieved_ratio", mixed.achieved_ratio ? Json(*mixed.achieved_ratio) : Json(nullptr)},
                     {"en_kept", mixed.en_kept},
                     {"ar_kept", mixed.ar_kept},
                     {"en_dropped", mixed.en_dropped},
                     {"ar_dropped", mixed.ar_dropped}};
  write_json(out / "corpus" / "manifest.json", with_stamp(manifest, stamp));
  write_json(out / "corpus" / "tuning_manifest.json",
             with_stamp(corpus::emit_tuning_manifest(corpus::TuningConfig::defaults()), stamp));

  // Evaluation.
  std::vector<eval::BenchmarkItem> bench = fx.benchmark_en;
  for (std::size_t i = 0; i < bench_units.size(); ++i) {
    if (bench_units[i].status == UnitStatus::auto_accepted) {
      bench.push_back(eval::arabic_item_from_unit(bench_units[i], fx.benchmark_en[i]));
    }
  }
  eval::write_suite(out / "bench", bench);
  auto eval_gw = gateway_for(eval::gold_oracle(bench));
  eval::EvalOptions eo;
  eo.threads = threads;
  const auto run = eval::evaluate(bench, *eval_gw, eo, "gold-oracle");
  write_lines(out / "eval" / "predictions.jsonl", to_lines(run.predictions));
  write_json(out / "eval" / "report.json", with_stamp(eval::to_json(run.report), stamp));
  write_text_atomic(out / "eval" / "report.md", eval::render_report(run.report));

  write_json(out / "config.json", {{"config", config}, {"config_hash", stamp["config_hash"]}});
  write_provenance(out, config);

  Json summary = {{"chats", transcripts.size()},
                  {"chats_regenerated", regenerated},
                  {"units_translated", units.size() + bench_units.size()},
                  {"auto_accepted", accepted.size()},
                  {"needs_review", needs_review},
                  {"audited", audited.size()},
                  {"review", review_stats},
                  {"corpus_en", mixed.en_kept},
                  {"corpus_ar", mixed.ar_kept},
                  {"ar_to_en_ratio", mixed.achieved_ratio ? Json(*mixed.achieved_ratio) : Json(nullptr)},
                  {"eval_avg", run.report.avg(std::nullopt)},
                  {"eval_items", bench.size()},
                  {"config_hash", stamp["config_hash"]}};
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
  run_log.append({{"event", "done"}, {"summary", summary}, {"elapsed_ms", elapsed}});
  return summary;
}

}  // namespace medforge::pipeline
