// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/eval/harness.hpp"

#include <algorithm>
#include <fmt/format.h>

#include "medforge/common/error.hpp"
#include "medforge/common/parallel.hpp"

namespace medforge::eval {

std::string_view to_string(ScoringMode m) { return m == ScoringMode::logprob ? "logprob" : "extract"; }

ScoringMode scoring_mode_from_string(std::string_view s) {
  if (s == "logprob") return ScoringMode::logprob;
  if (s == "extract") return ScoringMode::extract;
  throw ConfigError("unknown scoring mode '" + std::string(s) + "'");
}

Json to_json(const Prediction& p) {
  return {{"item_id", p.item_id},
          {"dataset", to_string(p.dataset)},
          {"language", corpus::to_string(p.language)},
          {"mode", to_string(p.mode)},
          {"raw_completion", p.raw_completion},
          {"extracted_index", p.extracted_index ? Json(*p.extracted_index) : Json(nullptr)},
          {"correct", p.correct},
          {"scored", p.scored},
          {"error", p.error.empty() ? Json(nullptr) : Json(p.error)}};
}

Prediction prediction_from_json(const Json& j) {
  Prediction p;
  p.item_id = j.at("item_id").get<std::string>();
  p.dataset = dataset_from_string(j.at("dataset").get<std::string>());
  p.language = corpus::language_from_string(j.at("language").get<std::string>());
  p.mode = scoring_mode_from_string(j.value("mode", std::string("extract")));
  p.raw_completion = j.value("raw_completion", std::string());
  if (j.contains("extracted_index") && !j["extracted_index"].is_null()) {
    p.extracted_index = j["extracted_index"].get<std::size_t>();
  }
  p.correct = j.at("correct").get<bool>();
  p.scored = j.value("scored", true);
  if (j.contains("error") && !j["error"].is_null()) p.error = j["error"].get<std::string>();
  return p;
}

double ColumnResult::accuracy() const {
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

ColumnResult& ColumnResult::operator+=(const ColumnResult& o) {
  correct += o.correct;
  total += o.total;
  unparsed += o.unparsed;
  unscored += o.unscored;
  return *this;
}

double row_average(const Row& row) {
  double sum = 0;
  int n = 0;
  for (const auto& v : row) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / n;
}

bool EvalReport::has_language(Language l) const {
  for (const auto& c : columns[static_cast<int>(l)]) {
    if (c.total + c.unscored > 0) return true;
  }
  return false;
}

ColumnResult EvalReport::bilingual(Dataset d) const {
  ColumnResult r = columns[0][static_cast<int>(d)];
  r += columns[1][static_cast<int>(d)];
  return r;
}

Row EvalReport::row(std::optional<Language> language) const {
  Row out;
  for (Dataset d : kAllDatasets) {
    const auto c = language ? columns[static_cast<int>(*language)][static_cast<int>(d)] : bilingual(d);
    if (c.total > 0) out[static_cast<int>(d)] = c.accuracy();
  }
  return out;
}

double EvalReport::avg(std::optional<Language> language) const { return row_average(row(language)); }

EvalReport aggregate(const std::vector<Prediction>& predictions, std::string model_tag) {
  EvalReport r;
  r.model_tag = std::move(model_tag);
  bool any_logprob = false;
  bool any_extract = false;
  for (const auto& p : predictions) {
    auto& c = r.columns[static_cast<int>(p.language)][static_cast<int>(p.dataset)];
    if (!p.scored) {
      ++c.unscored;
      ++r.unscored;
      continue;
    }
    (p.mode == ScoringMode::logprob ? any_logprob : any_extract) = true;
    ++c.total;
    if (p.correct) ++c.correct;
    if (!p.extracted_index) ++c.unparsed;
  }
  r.scoring_mode = any_logprob && any_extract ? "mixed" : any_logprob ? "logprob" : "extract";
  return r;
}

Prediction predict(const BenchmarkItem& item, gateway::Gateway& gw, const EvalOptions& opts) {
  Prediction p;
  p.item_id = item.item_id;
  p.dataset = item.dataset;
  p.language = item.language;
  const auto req = format_mcqa_prompt(item, opts.templates);
  try {
    std::optional<std::vector<double>> scores;
    if (opts.mode == ScoringMode::logprob) {
      std::vector<std::string> letters;
      for (std::size_t i = 0; i < item.options.size(); ++i) letters.push_back(option_letter(i));
      scores = gw.score_options(req, letters);
    }
    if (scores && scores->size() == item.options.size()) {
      p.mode = ScoringMode::logprob;
      p.extracted_index = static_cast<std::size_t>(std::max_element(scores->begin(), scores->end()) -
                                                   scores->begin());
    } else {
      p.mode = ScoringMode::extract;
      p.raw_completion = gw.complete(req).text;
      p.extracted_index = extract_answer(p.raw_completion, item.options);
    }
  } catch (const Error& e) {
    if (opts.strict) throw;
    p.scored = false;
    p.error = e.kind();
    return p;
  }
  p.correct = p.extracted_index && *p.extracted_index == item.gold_index;
  return p;
}

namespace {

template <class Loop>
EvalRun run(const std::vector<BenchmarkItem>& items, gateway::Gateway& gw, const EvalOptions& opts,
            std::string model_tag, Loop loop) {
  EvalRun out;
  out.predictions.resize(items.size());
  loop(items.size(), [&](std::size_t i) { out.predictions[i] = predict(items[i], gw, opts); });
  out.report = aggregate(out.predictions, std::move(model_tag));
  return out;
}

}  // namespace

EvalRun evaluate(const std::vector<BenchmarkItem>& items, gateway::Gateway& gw, const EvalOptions& opts,
                 std::string model_tag) {
  return run(items, gw, opts, std::move(model_tag),
             [&](std::size_t n, auto fn) { parallel_for(n, opts.threads, fn); });
}

EvalRun evaluate_serial(const std::vector<BenchmarkItem>& items, gateway::Gateway& gw,
                        const EvalOptions& opts, std::string model_tag) {
  return run(items, gw, opts, std::move(model_tag), [](std::size_t n, auto fn) { serial_for(n, fn); });
}

namespace {

Json column_json(const ColumnResult& c) {
  return {{"correct", c.correct},
          {"total", c.total},
          {"accuracy", c.accuracy()},
          {"unparsed", c.unparsed},
          {"unscored", c.unscored}};
}

}  // namespace

Json to_json(const EvalReport& r) {
  Json j = {{"model_tag", r.model_tag}, {"scoring_mode", r.scoring_mode}, {"unscored", r.unscored}};
  Json langs = Json::object();
  for (Language l : {Language::en, Language::ar}) {
    if (!r.has_language(l)) continue;
    Json cols = Json::object();
    for (Dataset d : kAllDatasets) {
      const auto& c = r.columns[static_cast<int>(l)][static_cast<int>(d)];
      if (c.total + c.unscored > 0) cols[std::string(to_string(d))] = column_json(c);
    }
    langs[std::string(corpus::to_string(l))] = {{"columns", std::move(cols)}, {"avg", r.avg(l)}};
  }
  j["languages"] = std::move(langs);
  if (r.has_language(Language::en) && r.has_language(Language::ar)) {
    Json cols = Json::object();
    for (Dataset d : kAllDatasets) {
      const auto c = r.bilingual(d);
      if (c.total + c.unscored > 0) cols[std::string(to_string(d))] = column_json(c);
    }
    j["bilingual"] = {{"columns", std::move(cols)}, {"avg", r.avg(std::nullopt)}};
  }
  return j;
}

std::string render_rows(const std::vector<ReferenceRow>& rows) {
  std::string out = "| Model |";
  for (Dataset d : kAllDatasets) out += fmt::format(" {} |", column_label(d));
  out += " AVG |\n|---|";
  for (std::size_t i = 0; i <= kColumns; ++i) out += "---|";
  out += "\n";
  for (const auto& row : rows) {
    out += "| " + row.label + " |";
    for (const auto& v : row.percent) out += v ? fmt::format(" {:.1f} |", *v) : std::string(" - |");
    out += fmt::format(" {:.1f} |\n", row_average(row.percent));
  }
  return out;
}

std::string render_report(const EvalReport& report, const std::vector<ReferenceRow>& reference_rows) {
  auto percent = [](Row r) {
    for (auto& v : r) {
      if (v) *v *= 100.0;
    }
    return r;
  };
  std::vector<ReferenceRow> rows;
  const bool en = report.has_language(Language::en);
  const bool ar = report.has_language(Language::ar);
  if (en) rows.push_back({report.model_tag + " (English)", percent(report.row(Language::en))});
  if (ar) rows.push_back({report.model_tag + " (Arabic)", percent(report.row(Language::ar))});
  if (en && ar) rows.push_back({report.model_tag + " (Bilingual)", percent(report.row(std::nullopt))});
  rows.insert(rows.end(), reference_rows.begin(), reference_rows.end());
  return render_rows(rows);
}

}  // namespace medforge::eval
