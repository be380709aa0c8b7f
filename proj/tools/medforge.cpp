// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "medforge/chat/forge.hpp"
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
#include "medforge/gateway/gateway.hpp"
#include "medforge/gateway/replay.hpp"
#include "medforge/pipeline/backends.hpp"
#include "medforge/pipeline/demo.hpp"
#include "medforge/pipeline/provenance.hpp"
#include "medforge/review/server.hpp"
#include "medforge/review/store.hpp"
#include "medforge/translate/loop.hpp"

namespace fs = std::filesystem;
using namespace medforge;

namespace {

struct BackendFlags {
  std::string spec;
  gateway::BackendConfig cfg;

  void attach(CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--backend", spec,
                              "mock:<script.json> | replay:<log.jsonl> | http | oracle | constant:<A-E> | random:<seed>");
    if (required) o->required();
    sub->add_option("--endpoint", cfg.endpoint, "Chat-completions URL for the http backend");
    sub->add_option("--model", cfg.model, "Model name sent to the http backend");
    sub->add_option("--auth-env", cfg.auth_token_env_var, "Environment variable holding the bearer token");
    sub->add_option("--max-retries", cfg.max_retries)->capture_default_str();
    sub->add_option("--min-backoff-ms", cfg.min_retry_backoff_ms)->capture_default_str();
    sub->add_option("--max-inflight", cfg.max_inflight)->capture_default_str();
    sub->add_option("--timeout-ms", cfg.timeout_ms)->capture_default_str();
  }

  Json to_json() const {
    return {{"backend", spec},         {"endpoint", cfg.endpoint},       {"model", cfg.model},
            {"max_retries", cfg.max_retries}, {"max_inflight", cfg.max_inflight}, {"timeout_ms", cfg.timeout_ms}};
  }
};

int resolve_threads(int t) { return t > 0 ? t : default_threads(); }

void log_config(const fs::path& out, const std::string& command, const Json& config) {
  fs::create_directories(out / "logs");
  AppendLog log(out / "logs" / "run.jsonl");
  log.append({{"event", "config"}, {"command", command}, {"config", config}});
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<corpus::SourceRecord> read_records(const fs::path& path) {
  std::vector<corpus::SourceRecord> out;
  for (const auto& [line, j] : read_jsonl(path)) {
    try {
      out.push_back(corpus::record_from_json(j));
    } catch (const Json::exception& e) {
      throw SchemaError(line, e.what());
    }
  }
  return out;
}

std::vector<translate::TranslationUnit> read_units(const fs::path& path) {
  std::vector<translate::TranslationUnit> out;
  for (const auto& [line, j] : read_jsonl(path)) {
    try {
      out.push_back(translate::unit_from_json(j));
    } catch (const Json::exception& e) {
      throw SchemaError(line, e.what());
    }
  }
  return out;
}

template <class T>
std::vector<Json> lines_of(const std::vector<T>& xs) {
  std::vector<Json> out;
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

void write_json(const fs::path& path, const Json& j) { write_text_atomic(path, j.dump(2) + "\n"); }

// ---- subcommands --------------------------------------------------------

struct IngestArgs {
  std::string origin;
  fs::path in;
  fs::path out;
};

int run_ingest(const IngestArgs& a) {
  auto result = corpus::ingest(a.in, corpus::origin_from_string(a.origin));
  if (a.out.has_parent_path()) fs::create_directories(a.out.parent_path());
  write_jsonl_atomic(a.out, lines_of(result.records));
  print({{"records", result.records.size()}, {"duplicates", result.duplicates}, {"out", a.out.string()}});
  return 0;
}

struct TranslateArgs {
  fs::path in;
  fs::path out;
  std::optional<fs::path> templates;
  translate::LoopConfig loop;
  std::string scorer_tag = "llm-judge";
  int threads = 0;
  BackendFlags backend;
};

int run_translate(TranslateArgs& a) {
  std::vector<translate::TranslationUnit> units;
  for (const auto& [line, j] : read_jsonl(a.in)) {
    if (j.contains("unit_id")) {
      units.push_back(translate::unit_from_json(j));
    } else {
      auto r = corpus::record_from_json(j);
      units.push_back(corpus::unit_from_record(r));
    }
  }
  const Json config = {{"command", "translate"},     {"threshold", a.loop.threshold},
                       {"max_rounds", a.loop.max_rounds}, {"audit_rate", a.loop.audit_rate},
                       {"seed", a.loop.rng_seed},     {"scorer_tag", a.scorer_tag},
                       {"backend", a.backend.to_json()}};
  fs::create_directories(a.out);
  log_config(a.out, "translate", config);
  auto log = std::make_shared<gateway::ReplayLog>(a.out / "logs" / "replay.jsonl");
  gateway::Gateway gw(pipeline::make_backend(a.backend.spec, a.backend.cfg), a.backend.cfg, log);
  translate::Translator tr(gw, a.templates ? translate::PromptTemplates::load(*a.templates)
                                           : translate::PromptTemplates::defaults(),
                           a.scorer_tag);
  auto outcome = translate::run_batch(tr, std::move(units), a.loop, resolve_threads(a.threads));

  std::vector<translate::TranslationUnit> accepted;
  std::vector<Json> errors;
  std::size_t needs_review = 0;
  for (std::size_t i = 0; i < outcome.units.size(); ++i) {
    const auto& u = outcome.units[i];
    if (u.status == translate::UnitStatus::auto_accepted) accepted.push_back(u);
    if (u.status == translate::UnitStatus::needs_review) ++needs_review;
    if (outcome.errors[i]) errors.push_back({{"unit_id", u.unit_id}, {"error", *outcome.errors[i]}});
  }
  const auto audited = translate::audit_sample(accepted, a.loop);
  const auto stamp = pipeline::provenance_stamp(config);
  write_jsonl_atomic(a.out / "units.jsonl", lines_of(outcome.units));
  write_jsonl_atomic(a.out / "errors.jsonl", errors);
  write_text_atomic(a.out / "calibration.csv", translate::calibration_csv(outcome.units));
  Json audit = {{"auto_accepted", accepted.size()}, {"needs_review", needs_review}, {"audited", audited},
                {"failed", errors.size()}, {"provenance", stamp}};
  write_json(a.out / "audit.json", audit);
  pipeline::write_provenance(a.out, config);
  audit.erase("provenance");
  audit.erase("audited");
  audit["audited"] = audited.size();
  print(audit);
  return 0;
}

struct ChatArgs {
  fs::path in;
  fs::path out;
  std::optional<fs::path> tmpl;
  int max_regen = 2;
  int threads = 0;
  std::string tokenizer{corpus::kDefaultTokenizer};
  BackendFlags backend;
};

int run_chat(ChatArgs& a) {
  std::vector<chat::McqaItem> items;
  for (const auto& r : read_records(a.in)) {
    if (const auto* m = std::get_if<chat::McqaItem>(&r.payload)) items.push_back(*m);
  }
  const Json config = {{"command", "chat"}, {"max_regen", a.max_regen}, {"tokenizer", a.tokenizer},
                       {"backend", a.backend.to_json()}};
  fs::create_directories(a.out);
  log_config(a.out, "chat", config);
  auto log = std::make_shared<gateway::ReplayLog>(a.out / "logs" / "replay.jsonl");
  gateway::Gateway gw(pipeline::make_backend(a.backend.spec, a.backend.cfg), a.backend.cfg, log);
  chat::ChatForge forge(gw, a.tmpl ? chat::ChatTemplate::load(*a.tmpl) : chat::ChatTemplate::defaults(),
                        a.tokenizer);
  const auto batch = chat::synthesize_batch(forge, items, a.max_regen, resolve_threads(a.threads));
  std::vector<chat::ChatTranscript> ok;
  std::vector<Json> failures;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (batch.transcripts[i]) ok.push_back(*batch.transcripts[i]);
    else failures.push_back({{"item_id", items[i].item_id}, {"error", *batch.errors[i]}});
  }
  write_jsonl_atomic(a.out / "transcripts.jsonl", lines_of(ok));
  write_jsonl_atomic(a.out / "failures.jsonl", failures);
  pipeline::write_provenance(a.out, config);
  print({{"synthesized", ok.size()}, {"failed", failures.size()}, {"mean_turns", chat::mean_turns(ok)}});
  return 0;
}

struct CompileArgs {
  std::vector<fs::path> en;
  std::vector<fs::path> ar;
  std::optional<fs::path> units;
  std::optional<fs::path> tuning;
  fs::path out;
  std::string ratio = "1:2";
  double tolerance = 0.01;
  bool no_downsample = false;
  std::uint64_t seed = 0;
  std::string mode = "samples";
  std::string tokenizer{corpus::kDefaultTokenizer};
  std::string assistant_tag = "AI";
  int threads = 0;
};

int run_compile(CompileArgs& a) {
  corpus::MixOptions mo;
  mo.target_ratio = corpus::parse_ratio(a.ratio);
  mo.tolerance = a.tolerance;
  mo.downsample = !a.no_downsample;
  mo.seed = a.seed;
  if (a.mode == "samples") mo.mode = corpus::RatioMode::samples;
  else if (a.mode == "tokens") mo.mode = corpus::RatioMode::tokens;
  else throw ConfigError("--mode must be samples or tokens");
  mo.tokenizer_id = a.tokenizer;
  corpus::AssistantTag tag;
  if (a.assistant_tag == "AI") tag = corpus::AssistantTag::ai;
  else if (a.assistant_tag == "gpt") tag = corpus::AssistantTag::gpt;
  else throw ConfigError("--assistant-tag must be AI or gpt");

  corpus::TuningConfig tuning = corpus::TuningConfig::defaults();
  if (a.tuning) tuning = tuning.overlay(Json::parse(read_text(*a.tuning)));

  std::vector<corpus::SourceRecord> english;
  for (const auto& p : a.en) {
    auto rs = read_records(p);
    english.insert(english.end(), rs.begin(), rs.end());
  }
  std::map<std::string, const corpus::SourceRecord*> by_id;
  for (const auto& r : english) by_id[r.record_id] = &r;

  std::vector<corpus::InstructionSample> en_samples;
  std::vector<corpus::InstructionSample> ar_samples;
  for (const auto& r : english) {
    if (r.language != corpus::Language::en) throw SchemaError(0, r.record_id + " passed via --en is not English");
    en_samples.push_back(corpus::render_conversation(r));
  }
  for (const auto& p : a.ar) {
    for (const auto& r : read_records(p)) ar_samples.push_back(corpus::render_conversation(r));
  }
  std::size_t gated_out = 0;
  if (a.units) {
    for (const auto& u : read_units(*a.units)) {
      if (!translate::eligible_for_corpus(u)) {
        ++gated_out;
        continue;
      }
      auto it = by_id.find(u.source_id);
      if (it == by_id.end()) throw UnknownUnit("unit " + u.unit_id + " has no English source among --en");
      ar_samples.push_back(corpus::render_conversation(corpus::arabic_record_from_unit(u, *it->second)));
    }
  }

  const Json config = {{"command", "compile"}, {"ratio", a.ratio},        {"tolerance", a.tolerance},
                       {"downsample", mo.downsample}, {"seed", a.seed},     {"ratio_mode", a.mode},
                       {"tokenizer", a.tokenizer},    {"assistant_tag", a.assistant_tag}};
  fs::create_directories(a.out);
  log_config(a.out, "compile", config);
  const auto mixed = corpus::mix_bilingual(std::move(en_samples), std::move(ar_samples), mo);
  std::vector<Json> lines;
  for (const auto& s : mixed.corpus) lines.push_back(corpus::to_json(s, tag));
  write_jsonl_atomic(a.out / "corpus.jsonl", lines);
  const auto stamp = pipeline::provenance_stamp(config);
  Json manifest = corpus::to_json(corpus::compute_stats(mixed.corpus, a.tokenizer, a.seed, resolve_threads(a.threads)));
  manifest["mix"] = {{"target_ratio", mo.target_ratio},
                     {"achieved_ratio", mixed.achieved_ratio ? Json(*mixed.achieved_ratio) : Json(nullptr)},
                     {"en_kept", mixed.en_kept},
                     {"ar_kept", mixed.ar_kept},
                     {"en_dropped", mixed.en_dropped},
                     {"ar_dropped", mixed.ar_dropped},
                     {"units_gated_out", gated_out}};
  manifest["provenance"] = stamp;
  write_json(a.out / "manifest.json", manifest);
  Json tm = corpus::emit_tuning_manifest(tuning);
  tm["provenance"] = stamp;
  write_json(a.out / "tuning_manifest.json", tm);
  pipeline::write_provenance(a.out, config);
  print(manifest["mix"]);
  return 0;
}

struct EvalArgs {
  fs::path suite;
  fs::path out;
  std::string mode = "extract";
  bool strict = false;
  int threads = 0;
  std::optional<fs::path> templates;
  std::string model_tag = "model";
  BackendFlags backend;
};

int run_eval(EvalArgs& a) {
  const auto items = eval::load_suite(a.suite, a.strict);
  eval::EvalOptions eo;
  eo.mode = eval::scoring_mode_from_string(a.mode);
  eo.strict = a.strict;
  eo.threads = resolve_threads(a.threads);
  if (a.templates) eo.templates = eval::EvalTemplates::load(*a.templates);
  const Json config = {{"command", "eval"}, {"mode", a.mode}, {"strict", a.strict}, {"model_tag", a.model_tag},
                       {"backend", a.backend.to_json()}};
  fs::create_directories(a.out);
  log_config(a.out, "eval", config);
  auto log = std::make_shared<gateway::ReplayLog>(a.out / "logs" / "replay.jsonl");
  gateway::Gateway gw(pipeline::make_backend(a.backend.spec, a.backend.cfg, &items), a.backend.cfg, log);
  const auto run = eval::evaluate(items, gw, eo, a.model_tag);
  write_jsonl_atomic(a.out / "predictions.jsonl", lines_of(run.predictions));
  Json report = eval::to_json(run.report);
  report["provenance"] = pipeline::provenance_stamp(config);
  write_json(a.out / "report.json", report);
  write_text_atomic(a.out / "report.md", eval::render_report(run.report));
  pipeline::write_provenance(a.out, config);
  std::cout << eval::render_report(run.report);
  if (run.report.unscored > 0) std::cerr << fmt::format("warning: {} items unscored\n", run.report.unscored);
  return 0;
}

struct ServeArgs {
  fs::path store;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<fs::path> import_units;
  std::optional<fs::path> audit;
  std::int64_t claim_timeout_ms = 15 * 60 * 1000;
};

int run_serve(const ServeArgs& a) {
  review::ReviewStore store(a.store, std::make_shared<SystemClock>(), a.claim_timeout_ms);
  if (a.import_units) {
    const auto units = read_units(*a.import_units);
    store.import_units(units);
    for (const auto& u : units) {
      if (u.status == translate::UnitStatus::needs_review) store.enqueue(u.unit_id, review::Reason::below_threshold);
    }
  }
  if (a.audit) {
    const Json audit = Json::parse(read_text(*a.audit));
    for (const auto& id : audit.at("audited")) store.enqueue(id.get<std::string>(), review::Reason::random_audit);
  }
  review::ReviewServer server(store);
  const int port = server.bind(a.host, a.port);
  print({{"listening", fmt::format("http://{}:{}", a.host, port)}});
  std::cout.flush();
  server.serve();
  return 0;
}

int emit_error(const Json& payload, int code) {
  std::cerr << payload.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"medforge: bilingual medical corpus and evaluation toolkit"};
  app.set_config("--config", "", "TOML config file; flags override it");
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "Normalize a source dataset into records");
  ingest->add_option("--origin", ingest_args.origin, "Source dataset, e.g. MedMCQA, MedQA, PubMedQA")->required();
  ingest->add_option("--in", ingest_args.in)->required()->check(CLI::ExistingFile);
  ingest->add_option("--out", ingest_args.out)->required();

  TranslateArgs tr_args;
  auto* tr = app.add_subcommand("translate", "Run the translate-score-refine loop");
  tr->add_option("--in", tr_args.in, "Records or units JSONL")->required()->check(CLI::ExistingFile);
  tr->add_option("--out", tr_args.out)->required();
  tr->add_option("--threshold", tr_args.loop.threshold)->capture_default_str();
  tr->add_option("--max-rounds", tr_args.loop.max_rounds)->capture_default_str();
  tr->add_option("--audit-rate", tr_args.loop.audit_rate)->capture_default_str();
  tr->add_option("--seed", tr_args.loop.rng_seed)->capture_default_str();
  tr->add_option("--templates", tr_args.templates, "Directory with translate.txt, score.txt, refine.txt");
  tr->add_option("--scorer-tag", tr_args.scorer_tag)->capture_default_str();
  tr->add_option("--threads", tr_args.threads);
  tr_args.backend.attach(tr);

  ChatArgs chat_args;
  auto* ch = app.add_subcommand("chat", "Synthesize patient-doctor dialogues from MCQA records");
  ch->add_option("--in", chat_args.in, "MCQA records JSONL")->required()->check(CLI::ExistingFile);
  ch->add_option("--out", chat_args.out)->required();
  ch->add_option("--template", chat_args.tmpl);
  ch->add_option("--max-regen", chat_args.max_regen)->capture_default_str();
  ch->add_option("--tokenizer", chat_args.tokenizer)->capture_default_str();
  ch->add_option("--threads", chat_args.threads);
  chat_args.backend.attach(ch);

  CompileArgs co_args;
  auto* co = app.add_subcommand("compile", "Mix English and Arabic samples into an instruction corpus");
  co->add_option("--en", co_args.en, "English records JSONL")->required();
  co->add_option("--ar", co_args.ar, "Arabic records JSONL");
  co->add_option("--units", co_args.units, "Reviewed translation units; eligible ones become Arabic samples");
  co->add_option("--tuning", co_args.tuning, "JSON overrides for the tuning manifest");
  co->add_option("--out", co_args.out)->required();
  co->add_option("--ratio", co_args.ratio, "Arabic:English ratio")->capture_default_str();
  co->add_option("--tolerance", co_args.tolerance)->capture_default_str();
  co->add_flag("--no-downsample", co_args.no_downsample);
  co->add_option("--seed", co_args.seed)->capture_default_str();
  co->add_option("--mode", co_args.mode, "samples | tokens")->capture_default_str();
  co->add_option("--tokenizer", co_args.tokenizer)->capture_default_str();
  co->add_option("--assistant-tag", co_args.assistant_tag, "AI | gpt")->capture_default_str();
  co->add_option("--threads", co_args.threads);

  EvalArgs ev_args;
  auto* ev = app.add_subcommand("eval", "Evaluate a backend on a benchmark suite");
  ev->add_option("--suite", ev_args.suite, "Directory with en/ and ar/ dataset files")->required();
  ev->add_option("--out", ev_args.out)->required();
  ev->add_option("--mode", ev_args.mode, "extract | logprob")->capture_default_str();
  ev->add_flag("--strict", ev_args.strict, "Check split sizes and abort on backend errors");
  ev->add_option("--templates", ev_args.templates, "Directory with eval_en.txt and eval_ar.txt");
  ev->add_option("--model-tag", ev_args.model_tag)->capture_default_str();
  ev->add_option("--threads", ev_args.threads);
  ev_args.backend.attach(ev);

  ServeArgs sv_args;
  auto* rv = app.add_subcommand("review", "Human review service");
  rv->require_subcommand(1);
  auto* sv = rv->add_subcommand("serve", "Serve the review HTTP API");
  sv->add_option("--store", sv_args.store)->required();
  sv->add_option("--host", sv_args.host)->capture_default_str();
  sv->add_option("--port", sv_args.port)->capture_default_str();
  sv->add_option("--import", sv_args.import_units, "Units JSONL to import; needs_review units are queued");
  sv->add_option("--audit", sv_args.audit, "audit.json from translate; listed units are queued");
  sv->add_option("--claim-timeout-ms", sv_args.claim_timeout_ms)->capture_default_str();

  pipeline::DemoOptions demo_args;
  std::string replay_log;
  auto* de = app.add_subcommand("demo", "Run the whole pipeline on bundled fixtures with mock backends");
  de->add_option("--seed", demo_args.seed)->capture_default_str();
  de->add_option("--out", demo_args.out)->capture_default_str();
  de->add_option("--replay", replay_log, "Replay log from an earlier run; no backend is called");
  de->add_option("--threads", demo_args.threads);

  fs::path verify_dir;
  auto* ve = app.add_subcommand("verify", "Recompute and check provenance hashes");
  ve->add_option("dir", verify_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return emit_error({{"error", "ConfigError"}, {"message", e.what()}}, 2);
  }

  try {
    if (*ingest) return run_ingest(ingest_args);
    if (*tr) return run_translate(tr_args);
    if (*ch) return run_chat(chat_args);
    if (*co) return run_compile(co_args);
    if (*ev) return run_eval(ev_args);
    if (*sv) return run_serve(sv_args);
    if (*de) {
      if (!replay_log.empty()) demo_args.replay_log = replay_log;
      print(pipeline::run_demo(demo_args));
      return 0;
    }
    if (*ve) {
      const auto r = pipeline::verify_provenance(verify_dir);
      print({{"ok", r.ok()}, {"files_checked", r.files_checked}, {"problems", r.problems}});
      return r.ok() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    return emit_error(e.to_json(), 2);
  } catch (const Error& e) {
    return emit_error(e.to_json(), 1);
  } catch (const Json::exception& e) {
    return emit_error({{"error", "SchemaError"}, {"message", e.what()}}, 1);
  } catch (const std::exception& e) {
    return emit_error({{"error", "InternalError"}, {"message", e.what()}}, 1);
  }
  return 0;
}
