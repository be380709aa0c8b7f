// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/corpus/mix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "medforge/common/error.hpp"
#include "medforge/common/rng.hpp"

namespace medforge::corpus {

namespace {

std::size_t sample_tokens(const InstructionSample& s, const TokenCounter& count) {
  std::size_t n = 0;
  for (const auto& t : s.conversations) n += count(t.value);
  return n;
}

std::vector<InstructionSample> keep(std::vector<InstructionSample>& from, const std::vector<std::size_t>& sorted_idx) {
  std::vector<InstructionSample> out;
  out.reserve(sorted_idx.size());
  for (auto i : sorted_idx) out.push_back(std::move(from[i]));
  return out;
}

/// Seeded greedy fill of a token budget, returned in input order.
std::vector<std::size_t> fill_budget(const std::vector<std::size_t>& tokens, double budget, std::uint64_t seed) {
  std::vector<std::size_t> chosen;
  double used = 0;
  for (auto i : shuffled_indices(tokens.size(), seed)) {
    if (used + static_cast<double>(tokens[i]) <= budget) {
      used += static_cast<double>(tokens[i]);
      chosen.push_back(i);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

double parse_ratio(std::string_view text) {
  auto colon = text.find(':');
  try {
    if (colon == std::string_view::npos) return std::stod(std::string(text));
    double ar = std::stod(std::string(text.substr(0, colon)));
    double en = std::stod(std::string(text.substr(colon + 1)));
    if (!(ar >= 0) || !(en > 0)) throw ConfigError("ratio terms must be positive");
    return ar / en;
  } catch (const std::logic_error&) {
    throw ConfigError("ratio must look like 1:2, got '" + std::string(text) + "'");
  }
}

MixResult mix_bilingual(std::vector<InstructionSample> en, std::vector<InstructionSample> ar,
                        const MixOptions& options) {
  for (const auto& s : en) {
    if (s.language != Language::en) throw SchemaError(0, "sample " + s.record_id + " in the English set is not English");
  }
  for (const auto& s : ar) {
    if (s.language != Language::ar) throw SchemaError(0, "sample " + s.record_id + " in the Arabic set is not Arabic");
  }
  if (!(options.target_ratio > 0)) throw ConfigError("target ratio must be positive");

  MixResult result;
  if (en.empty() && ar.empty()) return result;
  if (en.empty()) throw RatioUnreachable("no English samples to balance the Arabic ones against");

  const double target = options.target_ratio;
  const auto within = [&](double r) { return std::abs(r - target) <= options.tolerance + 1e-12; };

  std::vector<std::size_t> en_tokens, ar_tokens;
  auto measure = [&](const std::vector<InstructionSample>& set, std::vector<std::size_t>& tok) {
    if (options.mode == RatioMode::samples) return static_cast<double>(set.size());
    auto counter = TokenizerRegistry::global().get(options.tokenizer_id);
    double total = 0;
    for (const auto& s : set) {
      tok.push_back(sample_tokens(s, counter));
      total += static_cast<double>(tok.back());
    }
    return total;
  };
  const double en_size = measure(en, en_tokens);
  const double ar_size = measure(ar, ar_tokens);
  if (en_size == 0) throw RatioUnreachable("English side has no tokens");

  const std::size_t en_total = en.size();
  const std::size_t ar_total = ar.size();
  double achieved = ar_size / en_size;

  if (!within(achieved)) {
    if (!options.downsample) {
      throw RatioUnreachable("ar:en ratio " + std::to_string(achieved) + " is outside " +
                             std::to_string(target) + " +/- " + std::to_string(options.tolerance) +
                             " and downsampling is disabled");
    }
    const bool too_much_arabic = achieved > target;
    if (options.mode == RatioMode::samples) {
      if (too_much_arabic) {
        auto k = static_cast<std::size_t>(std::floor(target * en_size + 0.5));
        ar = keep(ar, sample_indices(ar.size(), k, options.seed));
      } else {
        auto k = static_cast<std::size_t>(std::floor(ar_size / target + 0.5));
        en = keep(en, sample_indices(en.size(), k, options.seed));
      }
      if (en.empty()) throw RatioUnreachable("too few Arabic samples to keep any English ones");
      achieved = static_cast<double>(ar.size()) / static_cast<double>(en.size());
    } else {
      if (too_much_arabic) {
        auto idx = fill_budget(ar_tokens, target * en_size, options.seed);
        double kept = 0;
        for (auto i : idx) kept += static_cast<double>(ar_tokens[i]);
        ar = keep(ar, idx);
        achieved = kept / en_size;
      } else {
        auto idx = fill_budget(en_tokens, ar_size / target, options.seed);
        double kept = 0;
        for (auto i : idx) kept += static_cast<double>(en_tokens[i]);
        en = keep(en, idx);
        if (kept == 0) throw RatioUnreachable("too few Arabic tokens to keep any English samples");
        achieved = ar_size / kept;
      }
    }
    if (!within(achieved)) {
      throw RatioUnreachable("downsampling reached ar:en " + std::to_string(achieved) +
                             ", outside the tolerance");
    }
  }

  result.en_kept = en.size();
  result.ar_kept = ar.size();
  result.en_dropped = en_total - en.size();
  result.ar_dropped = ar_total - ar.size();
  result.achieved_ratio = achieved;

  std::vector<InstructionSample> pooled;
  pooled.reserve(en.size() + ar.size());
  for (auto& s : en) pooled.push_back(std::move(s));
  for (auto& s : ar) pooled.push_back(std::move(s));
  // Separate stream from the sampling draws above.
  for (auto i : shuffled_indices(pooled.size(), options.seed ^ 0x9e3779b97f4a7c15ULL)) {
    result.corpus.push_back(pooled[i]);
  }
  return result;
}

}  // namespace medforge::corpus
