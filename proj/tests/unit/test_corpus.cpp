// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fmt/format.h>

#include <set>

#include "medforge/common/error.hpp"
#include "medforge/common/io.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/corpus/conversation.hpp"
#include "medforge/corpus/lineage.hpp"
#include "medforge/corpus/mix.hpp"
#include "medforge/corpus/records.hpp"
#include "medforge/corpus/stats.hpp"
#include "medforge/corpus/tokenizer.hpp"
#include "medforge/corpus/tuning.hpp"
#include "medforge/translate/unit.hpp"
#include "test_util.hpp"

using namespace medforge;
using namespace medforge::corpus;

namespace {

std::string mcqa_line(int i) {
  return fmt::format(
      R"({{"id":"m{0}","question":"Which vitamin deficiency causes condition {0}?","opa":"Vitamin A","opb":"Vitamin B12","opc":"Vitamin C","opd":"Vitamin D","cop":{1}}})",
      i, i % 4);
}

SourceRecord qa_record(const std::string& id, std::string q = "What is X?", std::string a = "X is a drug.") {
  SourceRecord r;
  r.record_id = id;
  r.source_id = id;
  r.kind = Kind::QA;
  r.origin = Origin::MedicationQA;
  r.payload = QaPair{std::move(q), std::move(a)};
  return r;
}

SourceRecord chat_record(const std::string& id, std::size_t rounds) {
  chat::ChatTranscript t;
  t.grounding_id = id;
  for (std::size_t k = 0; k < rounds; ++k) {
    t.turns.push_back({chat::Speaker::patient, "symptom " + std::to_string(k)});
    t.turns.push_back({chat::Speaker::doctor, "advice " + std::to_string(k)});
  }
  SourceRecord r;
  r.record_id = id;
  r.source_id = id;
  r.kind = Kind::Chat;
  r.origin = Origin::synthesized;
  r.payload = t;
  return r;
}

InstructionSample sample(const std::string& id, Language lang, Kind kind = Kind::QA, std::size_t rounds = 1) {
  InstructionSample s;
  s.record_id = id;
  s.source_id = id;
  s.language = lang;
  s.kind = kind;
  for (std::size_t k = 0; k < rounds; ++k) {
    s.conversations.push_back({From::human, "q " + id});
    s.conversations.push_back({From::ai, "a " + id});
    s.loss_mask.push_back(false);
    s.loss_mask.push_back(true);
  }
  return s;
}

std::vector<InstructionSample> many(std::size_t n, Language lang, const std::string& prefix) {
  std::vector<InstructionSample> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample(prefix + std::to_string(i), lang));
  return out;
}

}  // namespace

TEST(Tokenizer, DefaultSchemeExamples) {
  EXPECT_EQ(count_tokens("aspirin 81 mg"), 3u);
  EXPECT_EQ(count_tokens(""), 0u);
  EXPECT_EQ(count_tokens("ألم في الرأس"), 3u);
  EXPECT_EQ(count_tokens("Take 2 tablets, twice daily."), 7u);  // Take 2 tablets , twice daily .
  EXPECT_EQ(count_tokens("a b  c", kWhitespaceTokenizer), 3u);
  EXPECT_THROW(count_tokens("x", "no-such-tokenizer"), UnknownTokenizer);
}

TEST(Tokenizer, BatchParallelEqualsSerial) {
  std::vector<std::string> owned;
  SeededRng rng(3);
  for (int i = 0; i < 2000; ++i) owned.push_back(fmt::format("dose {} mg, ألم {} مرة", rng.uniform_index(1000), i));
  std::vector<std::string_view> views(owned.begin(), owned.end());
  auto serial = count_tokens_batch_serial(views, kDefaultTokenizer);
  EXPECT_EQ(count_tokens_batch(views, kDefaultTokenizer, 4), serial);
  EXPECT_EQ(count_tokens_batch(views, kDefaultTokenizer, 1), serial);
}

TEST(Ingest, ThreeMedMcqaLines) {
  auto res = ingest_text(mcqa_line(1) + "\n" + mcqa_line(2) + "\n" + mcqa_line(3) + "\n", Origin::MedMCQA);
  ASSERT_EQ(res.records.size(), 3u);
  EXPECT_EQ(res.duplicates, 0u);
  for (const auto& r : res.records) {
    EXPECT_EQ(r.kind, Kind::MCQA);
    EXPECT_EQ(std::get<chat::McqaItem>(r.payload).options.size(), 4u);
  }
  EXPECT_EQ(std::get<chat::McqaItem>(res.records[1].payload).gold_label, "C");  // cop 2, zero-based
}

TEST(Ingest, DuplicateLineCounted) {
  auto res = ingest_text(mcqa_line(1) + "\n" + mcqa_line(1) + "\n", Origin::MedMCQA);
  EXPECT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.duplicates, 1u);
}

TEST(Ingest, MalformedSecondLine) {
  try {
    ingest_text(mcqa_line(1) + "\n{\"question\": \"no options\"}\n", Origin::MedMCQA);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    ingest_text("{\"question\":\"q\",\"answer\":\"a\"}\nnot json\n", Origin::MedicationQA);
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Render, QaHasTwoEntries) {
  auto s = render_conversation(qa_record("r1"));
  ASSERT_EQ(s.conversations.size(), 2u);
  EXPECT_EQ(s.loss_mask, (std::vector<bool>{false, true}));
  EXPECT_EQ(s.conversations[0].value, "What is X?");
}

TEST(Render, FourTurnChatAlternates) {
  auto s = render_conversation(chat_record("c1", 2));
  ASSERT_EQ(s.conversations.size(), 4u);
  EXPECT_EQ(s.loss_mask, (std::vector<bool>{false, true, false, true}));
  EXPECT_EQ(s.conversations[0].from, From::human);
  EXPECT_EQ(s.conversations[3].from, From::ai);
}

TEST(Render, McqaOptionLabelsOnce) {
  auto res = ingest_text(mcqa_line(1), Origin::MedMCQA);
  auto s = render_conversation(res.records[0]);
  const auto& human = s.conversations[0].value;
  for (const char* label : {"A.", "B.", "C.", "D."}) EXPECT_EQ(testutil::count_occurrences(human, label), 1u) << label;
}

TEST(Render, RoundTripAllKinds) {
  auto mcqa = ingest_text(mcqa_line(5), Origin::MedMCQA).records[0];
  for (const auto& r : {qa_record("q"), chat_record("c", 3), mcqa}) {
    auto s = render_conversation(r);
    auto expected = r.payload;
    // dataset lives on the record, not the sample
    if (auto* m = std::get_if<chat::McqaItem>(&expected)) m->source_dataset = chat::SourceDataset::other;
    EXPECT_EQ(recover_payload(s), expected);
    EXPECT_EQ(sample_from_json(to_json(s)), s);
    EXPECT_EQ(sample_from_json(to_json(s, AssistantTag::gpt)), s);
  }
}

TEST(Render, SerializedShape) {
  auto j = to_json(render_conversation(qa_record("r1")));
  auto text = j.dump();
  EXPECT_NE(text.find(R"("conversations":[{"from":"human","value":"What is X?"},{"from":"AI","value":"X is a drug."}])"),
            std::string::npos);
}

TEST(MaskLaw, HoldsOverRandomSamples) {
  SeededRng rng(2024);
  std::size_t violations = 0, checked = 0;
  for (int i = 0; i < 1500; ++i) {
    SourceRecord r;
    switch (rng.uniform_index(3)) {
      case 0: r = qa_record("q" + std::to_string(i), "question " + std::to_string(i), "answer"); break;
      case 1: r = chat_record("c" + std::to_string(i), 1 + rng.uniform_index(6)); break;
      default: r = ingest_text(mcqa_line(i), Origin::MedMCQA).records[0];
    }
    auto s = sample_from_json(to_json(render_conversation(r)));
    for (std::size_t k = 0; k < s.conversations.size(); ++k) {
      ++checked;
      if (s.loss_mask[k] != (s.conversations[k].from == From::ai)) ++violations;
    }
  }
  EXPECT_EQ(violations, 0u);
  EXPECT_GT(checked, 3000u);

  // A corrupted mask is rejected on load.
  auto j = to_json(render_conversation(qa_record("bad")));
  j["loss_mask"] = Json::array({true, true});
  EXPECT_THROW(sample_from_json(j), SchemaError);
}

TEST(Mix, ExactTargetNeedsNoSampling) {
  MixOptions o;
  o.seed = 1;
  auto r = mix_bilingual(many(1000, Language::en, "e"), many(500, Language::ar, "a"), o);
  ASSERT_TRUE(r.achieved_ratio);
  EXPECT_DOUBLE_EQ(*r.achieved_ratio, 0.5);
  EXPECT_EQ(r.ar_dropped + r.en_dropped, 0u);
  EXPECT_EQ(r.corpus.size(), 1500u);
}

TEST(Mix, DownsamplesArabicDeterministically) {
  MixOptions o;
  o.seed = 99;
  auto en = many(1000, Language::en, "e");
  auto ar = many(800, Language::ar, "a");
  auto r = mix_bilingual(en, ar, o);
  EXPECT_EQ(r.ar_kept, 500u);
  EXPECT_EQ(r.en_kept, 1000u);
  EXPECT_NEAR(*r.achieved_ratio, 0.5, 0.01);
  // Kept Arabic ids are the seeded sample of the input positions.
  std::set<std::string> expect, got;
  for (auto i : sample_indices(800, 500, 99)) expect.insert("a" + std::to_string(i));
  for (const auto& s : r.corpus)
    if (s.language == Language::ar) got.insert(s.record_id);
  EXPECT_EQ(got, expect);
  auto again = mix_bilingual(en, ar, o);
  EXPECT_EQ(again.corpus, r.corpus);
}

TEST(Mix, UnreachableWithoutDownsampling) {
  MixOptions o;
  o.downsample = false;
  EXPECT_THROW(mix_bilingual(many(1000, Language::en, "e"), many(100, Language::ar, "a"), o), RatioUnreachable);
}

TEST(Mix, WrongLanguageRejectedAndRatioParsed) {
  EXPECT_THROW(mix_bilingual(many(2, Language::ar, "x"), {}, MixOptions{}), SchemaError);
  EXPECT_DOUBLE_EQ(parse_ratio("1:2"), 0.5);
  EXPECT_DOUBLE_EQ(parse_ratio("0.25"), 0.25);
  EXPECT_THROW(parse_ratio("one:two"), ConfigError);
}

TEST(Mix, TokenModeStaysWithinTolerance) {
  MixOptions o;
  o.mode = RatioMode::tokens;
  o.tolerance = 0.02;
  auto r = mix_bilingual(many(400, Language::en, "e"), many(400, Language::ar, "a"), o);
  EXPECT_NEAR(*r.achieved_ratio, 0.5, 0.02);
}

TEST(Stats, QaSliceSingleTurn) {
  auto m = compute_stats({sample("a", Language::en), sample("b", Language::en)}, std::string(kDefaultTokenizer), 0);
  EXPECT_EQ(m.slice(Kind::QA, Language::en).samples, 2u);
  EXPECT_DOUBLE_EQ(m.slice(Kind::QA, Language::en).mean_turns(), 1.0);
}

TEST(Stats, ChatMeanTurns) {
  auto m = compute_stats({sample("a", Language::en, Kind::Chat, 2), sample("b", Language::en, Kind::Chat, 3)},
                         std::string(kDefaultTokenizer), 0);
  EXPECT_DOUBLE_EQ(m.slice(Kind::Chat, Language::en).mean_turns(), 2.5);
}

TEST(Stats, EmptyCorpusHasNullRatio) {
  auto m = compute_stats({}, std::string(kDefaultTokenizer), 0);
  EXPECT_EQ(m.totals.samples, 0u);
  EXPECT_FALSE(m.ar_to_en_ratio.has_value());
  EXPECT_TRUE(to_json(m)["ar_to_en_ratio"].is_null());
}

// Slice sizes scaled down 100x from the reference corpus statistics: QA
// 423.8K at 1.00 turns, MCQA 638.1K at 1.00, Chat 249.7K at 4.72, total 1.71.
TEST(Stats, WeightedTotalMatchesReferenceStats) {
  std::vector<InstructionSample> corpus;
  for (int i = 0; i < 4238; ++i) corpus.push_back(sample("q" + std::to_string(i), Language::en, Kind::QA));
  for (int i = 0; i < 6381; ++i) corpus.push_back(sample("m" + std::to_string(i), Language::en, Kind::MCQA));
  // 2497 chats holding 11786 exchange rounds, 4.72 on average.
  for (int i = 0; i < 2497; ++i) corpus.push_back(sample("c" + std::to_string(i), Language::en, Kind::Chat, i < 1798 ? 5 : 4));
  auto m = compute_stats(corpus, std::string(kDefaultTokenizer), 0, 2);
  EXPECT_EQ(fmt::format("{:.2f}", m.slice(Kind::QA, Language::en).mean_turns()), "1.00");
  EXPECT_EQ(fmt::format("{:.2f}", m.slice(Kind::MCQA, Language::en).mean_turns()), "1.00");
  EXPECT_EQ(fmt::format("{:.2f}", m.slice(Kind::Chat, Language::en).mean_turns()), "4.72");
  EXPECT_EQ(fmt::format("{:.2f}", m.totals.mean_turns()), "1.71");
  // Independent weighted mean from the three slice figures.
  double weighted = (4238 * 1.0 + 6381 * 1.0 + 2497 * (11786.0 / 2497)) / 13116;
  EXPECT_DOUBLE_EQ(m.totals.mean_turns(), weighted);
}

TEST(Stats, AdditiveAndReproducibleFromEmittedFile) {
  testutil::TempDir dir;
  SeededRng rng(8);
  std::vector<InstructionSample> corpus;
  for (int i = 0; i < 300; ++i) {
    auto lang = rng.uniform_index(3) == 0 ? Language::ar : Language::en;
    auto kind = static_cast<Kind>(rng.uniform_index(3));
    corpus.push_back(sample("s" + std::to_string(i), lang, kind, kind == Kind::Chat ? 1 + rng.uniform_index(5) : 1));
  }
  auto m = compute_stats(corpus, std::string(kDefaultTokenizer), 5, 3);
  SliceStats sum;
  for (auto k : {Kind::QA, Kind::MCQA, Kind::Chat})
    for (auto l : {Language::en, Language::ar}) sum += m.slice(k, l);
  EXPECT_EQ(sum.samples, m.totals.samples);
  EXPECT_EQ(sum.tokens, m.totals.tokens);
  EXPECT_EQ(sum.conversation_entries, m.totals.conversation_entries);
  EXPECT_EQ(m.by_language[0].samples + m.by_language[1].samples, m.totals.samples);

  std::vector<Json> lines;
  for (const auto& s : corpus) lines.push_back(to_json(s));
  write_jsonl_atomic(dir / "corpus.jsonl", lines);
  std::vector<InstructionSample> back;
  for (const auto& l : read_jsonl(dir / "corpus.jsonl")) back.push_back(sample_from_json(l.value));
  auto again = compute_stats(back, std::string(kDefaultTokenizer), 5, 1);
  EXPECT_EQ(to_json(again).dump(), to_json(m).dump());
}

TEST(Tuning, DefaultsMatchReferenceRecipe) {
  auto j = emit_tuning_manifest(TuningConfig::defaults());
  EXPECT_EQ(j["adapter_rank"], 128);
  EXPECT_EQ(j["adapter_alpha"], 64);
  EXPECT_DOUBLE_EQ(j["learning_rate"].get<double>(), 0.0002);
  EXPECT_EQ(j["warmup_steps"], 10);
  EXPECT_EQ(j["epochs"], 2);
  EXPECT_EQ(j["batch_size"], 16);
  EXPECT_EQ(j["grad_accum_steps"], 2);
  EXPECT_EQ(j["optimizer"], "AdamW");
  EXPECT_EQ(j["schedule"], "cosine");
  EXPECT_TRUE(j["overrides"].empty());
}

TEST(Tuning, MissingFieldAndOverrides) {
  auto cfg = TuningConfig::defaults().overlay(Json{{"learning_rate", nullptr}});
  EXPECT_THROW(emit_tuning_manifest(cfg), MissingField);
  auto j = emit_tuning_manifest(TuningConfig::defaults().overlay(Json{{"adapter_rank", 8}}));
  EXPECT_EQ(j["adapter_rank"], 8);
  EXPECT_EQ(j["overrides"], Json::array({"adapter_rank"}));
  EXPECT_THROW(TuningConfig::defaults().overlay(Json{{"rank", 8}}), ConfigError);
  EXPECT_THROW(TuningConfig::defaults().overlay(Json{{"adapter_rank", "big"}}), ConfigError);
}

TEST(Tuning, AdapterFractionIsSmallForMoeDims) {
  ArchitectureDims d{4096, 14336, 32, 32, 8, 32000, 8};
  auto j = emit_tuning_manifest(TuningConfig::defaults().overlay(
      Json{{"architecture", {{"hidden", 4096}, {"ffn", 14336}, {"layers", 32}, {"heads", 32}, {"kv_heads", 8},
                             {"vocab", 32000}, {"experts", 8}}}}));
  double f = j["adapter_parameter_fraction"].get<double>();
  EXPECT_GT(f, 0.0);
  EXPECT_LT(f, 0.2);
  EXPECT_DOUBLE_EQ(f, adapter_parameter_fraction(d, 128, *TuningConfig::defaults().adapter_targets));
}

TEST(Lineage, UnitRoundTripToArabicRecord) {
  auto en = ingest_text(mcqa_line(3), Origin::MedMCQA).records[0];
  auto unit = unit_from_record(en);
  EXPECT_EQ(unit.unit_id, en.record_id + "/ar");
  unit.arabic_fields = unit.english_fields;
  for (auto& f : unit.arabic_fields) f.text = "ع " + f.text;
  unit.status = translate::UnitStatus::auto_accepted;
  auto ar = arabic_record_from_unit(unit, en);
  EXPECT_EQ(ar.language, Language::ar);
  EXPECT_EQ(ar.source_id, en.record_id);
  EXPECT_EQ(std::get<chat::McqaItem>(ar.payload).gold_label, std::get<chat::McqaItem>(en.payload).gold_label);
  unit.arabic_fields.pop_back();
  EXPECT_THROW(arabic_record_from_unit(unit, en), AlignmentError);
}

TEST(Records, JsonRoundTrip) {
  for (const auto& r : {qa_record("q"), chat_record("c", 2), ingest_text(mcqa_line(9), Origin::MedMCQA).records[0]})
    EXPECT_EQ(record_from_json(to_json(r)), r);
}
