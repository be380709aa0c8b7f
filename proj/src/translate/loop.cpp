// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/translate/loop.hpp"

#include <algorithm>
#include <cmath>

#include "medforge/common/error.hpp"
#include "medforge/common/parallel.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/common/templates.hpp"

namespace medforge::translate {

namespace {

constexpr const char* kTranslatorSystem =
    "You are a professional English-Arabic medical translator.";
constexpr const char* kJudgeSystem =
    "You are a strict bilingual reviewer of English-to-Arabic medical translations.";

gateway::CompletionRequest make_request(const char* system, std::string prompt, std::string tag) {
  gateway::CompletionRequest req;
  req.messages = {{gateway::Role::system, system}, {gateway::Role::user, std::move(prompt)}};
  req.max_output_tokens = 4096;
  req.temperature = 0.0;
  req.request_tag = std::move(tag);
  return req;
}

// Truncated replies are passed on; the field decoder rejects them when
// segments are missing.
std::string completion_text(gateway::Gateway& gw, const gateway::CompletionRequest& req) {
  return gw.complete(req).text;
}

void require_nonempty(const Fields& english) {
  if (english.empty()) throw AlignmentError("unit has no English fields");
  for (const auto& f : english) {
    if (f.text.empty()) throw AlignmentError("English field '" + f.name + "' is empty");
  }
}

}  // namespace

Translator::Translator(gateway::Gateway& gateway, PromptTemplates templates, std::string scorer_tag)
    : gateway_(gateway), templates_(std::move(templates)), scorer_tag_(std::move(scorer_tag)) {
  templates_.validate();
}

Fields Translator::translate(const std::string& unit_id, const Fields& english) {
  require_nonempty(english);
  auto prompt = render_template(templates_.translate, {{"english", encode_fields(english)}}, {"english"});
  auto req = make_request(kTranslatorSystem, std::move(prompt), unit_id + "/translate/1");
  return decode_fields(completion_text(gateway_, req), english);
}

QualityScore Translator::score(const std::string& unit_id, int round, const Fields& english,
                               const Fields& arabic) {
  if (!same_field_names(english, arabic)) throw AlignmentError("field lists are not aligned");
  auto prompt = render_template(templates_.score,
                                {{"english", encode_fields(english)}, {"arabic", encode_fields(arabic)}},
                                {"english", "arabic"});
  auto req = make_request(kJudgeSystem, std::move(prompt), unit_id + "/score/" + std::to_string(round));
  return parse_score(completion_text(gateway_, req), scorer_tag_);
}

Fields Translator::refine(const std::string& unit_id, int round, const Fields& english,
                          const Fields& arabic, const QualityScore& prior) {
  if (!same_field_names(english, arabic)) throw AlignmentError("field lists are not aligned");
  auto prompt = render_template(templates_.refine,
                                {{"english", encode_fields(english)},
                                 {"arabic", encode_fields(arabic)},
                                 {"score", std::to_string(prior.value)}},
                                {"english", "arabic", "score"});
  auto req = make_request(kTranslatorSystem, std::move(prompt), unit_id + "/refine/" + std::to_string(round));
  return decode_fields(completion_text(gateway_, req), english);
}

TranslationUnit& Translator::run_iterative(TranslationUnit& unit, const LoopConfig& cfg) {
  cfg.validate();
  if (unit.status != UnitStatus::pending) {
    throw InvalidState("unit " + unit.unit_id + " is " + std::string(to_string(unit.status)) +
                       ", expected pending");
  }
  unit.metadata["threshold"] = cfg.threshold;
  unit.metadata["max_rounds"] = cfg.max_rounds;

  while (true) {
    const int round = static_cast<int>(unit.rounds.size()) + 1;
    if (round > cfg.max_rounds) {
      // Resumed with a smaller cap than the rounds already spent.
      transition(unit, unit.rounds.back().score.value >= cfg.threshold ? UnitStatus::auto_accepted
                                                                       : UnitStatus::needs_review);
      return unit;
    }
    if (unit.draft_round != round) {
      unit.arabic_fields = round == 1 ? translate(unit.unit_id, unit.english_fields)
                                      : refine(unit.unit_id, round, unit.english_fields,
                                               unit.rounds.back().arabic_snapshot,
                                               unit.rounds.back().score);
      unit.draft_round = round;
    }
    QualityScore s = score(unit.unit_id, round, unit.english_fields, unit.arabic_fields);
    unit.rounds.push_back({round, unit.arabic_fields, s});

    if (s.value >= cfg.threshold) {
      transition(unit, UnitStatus::auto_accepted);
      return unit;
    }
    if (round >= cfg.max_rounds) {
      transition(unit, UnitStatus::needs_review);
      return unit;
    }
  }
}

std::size_t BatchOutcome::failed() const {
  return static_cast<std::size_t>(std::count_if(errors.begin(), errors.end(),
                                                [](const auto& e) { return e.has_value(); }));
}

BatchOutcome run_batch(Translator& translator, std::vector<TranslationUnit> units,
                       const LoopConfig& cfg, int threads) {
  cfg.validate();
  BatchOutcome out;
  out.errors.resize(units.size());
  parallel_for(units.size(), threads, [&](std::size_t i) {
    if (units[i].status != UnitStatus::pending) return;
    try {
      translator.run_iterative(units[i], cfg);
    } catch (const Error& e) {
      out.errors[i] = e.to_json();
    }
  });
  out.units = std::move(units);
  return out;
}

std::vector<std::string> audit_sample(const std::vector<TranslationUnit>& accepted,
                                      const LoopConfig& cfg) {
  cfg.validate();
  std::vector<std::string> ids;
  ids.reserve(accepted.size());
  for (const auto& u : accepted) {
    if (u.status != UnitStatus::auto_accepted) {
      throw InvalidState("audit sampling needs auto_accepted units; " + u.unit_id + " is " +
                         std::string(to_string(u.status)));
    }
    ids.push_back(u.unit_id);
  }
  std::sort(ids.begin(), ids.end());
  const auto k = static_cast<std::size_t>(std::floor(cfg.audit_rate * static_cast<double>(ids.size()) + 0.5));
  std::vector<std::string> chosen;
  for (auto idx : sample_indices(ids.size(), k, cfg.rng_seed)) chosen.push_back(ids[idx]);
  return chosen;
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string joined(const Fields& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out += '\n';
    out += fields[i].name + ": " + fields[i].text;
  }
  return out;
}

}  // namespace

std::string calibration_csv(const std::vector<TranslationUnit>& units) {
  std::string out = "score,unit_id,round,status,english,arabic\n";
  for (const auto& u : units) {
    if (u.rounds.empty()) continue;
    const auto& last = u.rounds.back();
    out += std::to_string(last.score.value) + "," + csv_quote(u.unit_id) + "," +
           std::to_string(last.round_index) + "," + std::string(to_string(u.status)) + "," +
           csv_quote(joined(u.english_fields)) + "," + csv_quote(joined(last.arabic_snapshot)) + "\n";
  }
  return out;
}

}  // namespace medforge::translate
