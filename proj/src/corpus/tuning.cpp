// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/corpus/tuning.hpp"

#include <algorithm>

#include "medforge/common/error.hpp"

namespace medforge::corpus {

TuningConfig TuningConfig::defaults() {
  TuningConfig c;
  c.adapter_rank = 128;
  c.adapter_alpha = 64;
  c.adapter_targets = std::vector<std::string>{"q", "k", "v", "experts", "router"};
  c.batch_size = 16;
  c.grad_accum_steps = 2;
  c.optimizer = "AdamW";
  c.learning_rate = 0.0002;
  c.schedule = "cosine";
  c.warmup_steps = 10;
  c.epochs = 2;
  return c;
}

namespace {

template <class T>
void apply(const Json& j, const char* key, std::optional<T>& slot) {
  if (!j.contains(key)) return;
  if (j[key].is_null()) {
    slot.reset();
    return;
  }
  try {
    slot = j[key].get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(std::string("tuning field '") + key + "' has the wrong type");
  }
}

}  // namespace

TuningConfig TuningConfig::overlay(const Json& overrides) const {
  static const char* kKnown[] = {"adapter_rank", "adapter_alpha",  "adapter_targets", "batch_size",
                                 "grad_accum_steps", "optimizer", "learning_rate", "schedule",
                                 "warmup_steps", "epochs", "architecture"};
  if (!overrides.is_object()) throw ConfigError("tuning config must be a JSON object");
  for (const auto& [key, _] : overrides.items()) {
    if (std::none_of(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return key == k; })) {
      throw ConfigError("unknown tuning field '" + key + "'");
    }
  }
  TuningConfig c = *this;
  apply(overrides, "adapter_rank", c.adapter_rank);
  apply(overrides, "adapter_alpha", c.adapter_alpha);
  apply(overrides, "adapter_targets", c.adapter_targets);
  apply(overrides, "batch_size", c.batch_size);
  apply(overrides, "grad_accum_steps", c.grad_accum_steps);
  apply(overrides, "optimizer", c.optimizer);
  apply(overrides, "learning_rate", c.learning_rate);
  apply(overrides, "schedule", c.schedule);
  apply(overrides, "warmup_steps", c.warmup_steps);
  apply(overrides, "epochs", c.epochs);
  if (overrides.contains("architecture")) {
    const auto& a = overrides["architecture"];
    if (a.is_null()) {
      c.architecture.reset();
    } else {
      try {
        ArchitectureDims d;
        d.hidden = a.at("hidden").get<std::int64_t>();
        d.ffn = a.at("ffn").get<std::int64_t>();
        d.layers = a.at("layers").get<std::int64_t>();
        d.heads = a.at("heads").get<std::int64_t>();
        d.kv_heads = a.value("kv_heads", d.heads);
        d.vocab = a.at("vocab").get<std::int64_t>();
        d.experts = a.value("experts", std::int64_t{1});
        c.architecture = d;
      } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad architecture block: ") + e.what());
      }
    }
  }
  return c;
}

double adapter_parameter_fraction(const ArchitectureDims& d, int rank,
                                  const std::vector<std::string>& targets) {
  if (d.hidden <= 0 || d.heads <= 0 || d.layers <= 0 || d.experts <= 0) {
    throw ConfigError("architecture dimensions must be positive");
  }
  const double h = static_cast<double>(d.hidden);
  const double f = static_cast<double>(d.ffn);
  const double e = static_cast<double>(d.experts);
  const double kv = static_cast<double>(d.kv_heads) * (h / static_cast<double>(d.heads));
  const double r = rank;
  auto has = [&](const char* t) { return std::find(targets.begin(), targets.end(), t) != targets.end(); };

  // An adapter on a (in x out) projection adds r * (in + out) weights.
  double adapter = 0;
  if (has("q")) adapter += r * (h + h);
  if (has("k")) adapter += r * (h + kv);
  if (has("v")) adapter += r * (h + kv);
  if (has("o")) adapter += r * (h + h);
  if (has("experts")) adapter += e * 3.0 * r * (h + f);
  if (has("router")) adapter += r * (h + e);
  adapter *= static_cast<double>(d.layers);

  const double per_layer = 2.0 * h * h + 2.0 * h * kv + e * 3.0 * h * f + h * e + 2.0 * h;
  const double base = 2.0 * static_cast<double>(d.vocab) * h + static_cast<double>(d.layers) * per_layer + h;
  return adapter / base;
}

Json emit_tuning_manifest(const TuningConfig& cfg) {
  auto need = [](const auto& field, const char* name) -> const auto& {
    if (!field) throw MissingField(std::string("tuning config is missing '") + name + "'");
    return *field;
  };
  Json j = {{"adapter_rank", need(cfg.adapter_rank, "adapter_rank")},
            {"adapter_alpha", need(cfg.adapter_alpha, "adapter_alpha")},
            {"adapter_targets", need(cfg.adapter_targets, "adapter_targets")},
            {"batch_size", need(cfg.batch_size, "batch_size")},
            {"grad_accum_steps", need(cfg.grad_accum_steps, "grad_accum_steps")},
            {"optimizer", need(cfg.optimizer, "optimizer")},
            {"learning_rate", need(cfg.learning_rate, "learning_rate")},
            {"schedule", need(cfg.schedule, "schedule")},
            {"warmup_steps", need(cfg.warmup_steps, "warmup_steps")},
            {"epochs", need(cfg.epochs, "epochs")}};

  const TuningConfig d = TuningConfig::defaults();
  Json overrides = Json::array();
  auto note = [&](const char* name, bool differs) {
    if (differs) overrides.push_back(name);
  };
  note("adapter_rank", cfg.adapter_rank != d.adapter_rank);
  note("adapter_alpha", cfg.adapter_alpha != d.adapter_alpha);
  note("adapter_targets", cfg.adapter_targets != d.adapter_targets);
  note("batch_size", cfg.batch_size != d.batch_size);
  note("grad_accum_steps", cfg.grad_accum_steps != d.grad_accum_steps);
  note("optimizer", cfg.optimizer != d.optimizer);
  note("learning_rate", cfg.learning_rate != d.learning_rate);
  note("schedule", cfg.schedule != d.schedule);
  note("warmup_steps", cfg.warmup_steps != d.warmup_steps);
  note("epochs", cfg.epochs != d.epochs);
  j["overrides"] = std::move(overrides);

  if (cfg.architecture) {
    const auto& a = *cfg.architecture;
    j["architecture"] = {{"hidden", a.hidden}, {"ffn", a.ffn},       {"layers", a.layers},
                         {"heads", a.heads},   {"kv_heads", a.kv_heads}, {"vocab", a.vocab},
                         {"experts", a.experts}};
    j["adapter_parameter_fraction"] = adapter_parameter_fraction(a, *cfg.adapter_rank, *cfg.adapter_targets);
  } else {
    j["adapter_parameter_fraction"] = nullptr;
  }
  return j;
}

}  // namespace medforge::corpus
