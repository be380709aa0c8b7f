// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include "medforge/corpus/stats.hpp"

#include <string_view>

#include "medforge/corpus/tokenizer.hpp"

namespace medforge::corpus {

double SliceStats::mean_turns() const {
  if (samples == 0) return 0.0;
  return static_cast<double>(conversation_entries) / (2.0 * static_cast<double>(samples));
}

SliceStats& SliceStats::operator+=(const SliceStats& o) {
  samples += o.samples;
  conversation_entries += o.conversation_entries;
  tokens += o.tokens;
  return *this;
}

const SliceStats& DatasetManifest::slice(Kind k, Language l) const {
  return slices[static_cast<int>(k)][static_cast<int>(l)];
}

DatasetManifest compute_stats(const std::vector<InstructionSample>& corpus,
                              const std::string& tokenizer_id, std::uint64_t rng_seed, int threads) {
  DatasetManifest m;
  m.rng_seed = rng_seed;
  m.tokenizer_id = tokenizer_id;

  std::vector<std::string_view> texts[3][2];
  for (const auto& s : corpus) {
    auto& slice = m.slices[static_cast<int>(s.kind)][static_cast<int>(s.language)];
    ++slice.samples;
    slice.conversation_entries += s.conversations.size();
    for (const auto& t : s.conversations) {
      texts[static_cast<int>(s.kind)][static_cast<int>(s.language)].push_back(t.value);
    }
  }
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 2; ++l) {
      m.slices[k][l].tokens = threads > 1 ? count_tokens_batch(texts[k][l], tokenizer_id, threads)
                                          : count_tokens_batch_serial(texts[k][l], tokenizer_id);
      m.by_language[l] += m.slices[k][l];
      m.totals += m.slices[k][l];
    }
  }
  const auto& en = m.by_language[static_cast<int>(Language::en)];
  const auto& ar = m.by_language[static_cast<int>(Language::ar)];
  if (en.samples > 0) m.ar_to_en_ratio = static_cast<double>(ar.samples) / static_cast<double>(en.samples);
  return m;
}

namespace {

Json slice_json(const SliceStats& s) {
  return {{"samples", s.samples}, {"mean_turns", s.mean_turns()}, {"tokens", s.tokens}};
}

}  // namespace

Json to_json(const DatasetManifest& m) {
  Json slices = Json::array();
  for (auto k : {Kind::QA, Kind::MCQA, Kind::Chat}) {
    for (auto l : {Language::en, Language::ar}) {
      Json j = {{"kind", to_string(k)}, {"language", to_string(l)}};
      j.update(slice_json(m.slice(k, l)));
      slices.push_back(std::move(j));
    }
  }
  return {{"slices", std::move(slices)},
          {"by_language",
           {{"en", slice_json(m.by_language[0])}, {"ar", slice_json(m.by_language[1])}}},
          {"totals", slice_json(m.totals)},
          {"ar_to_en_ratio", m.ar_to_en_ratio ? Json(*m.ar_to_en_ratio) : Json(nullptr)},
          {"rng_seed", m.rng_seed},
          {"tokenizer_id", m.tokenizer_id},
          {"mean_turns_definition", "exchange rounds per sample: |conversations| / 2"},
          {"token_counts_approximate", true}};
}

}  // namespace medforge::corpus
