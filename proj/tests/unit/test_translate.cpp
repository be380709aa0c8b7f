// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <set>

#include "medforge/common/error.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/gateway/gateway.hpp"
#include "medforge/gateway/mock_backend.hpp"
#include "medforge/translate/loop.hpp"
#include "medforge/translate/protocol.hpp"
#include "medforge/translate/unit.hpp"
#include "test_util.hpp"

using namespace medforge;
using namespace medforge::translate;
using gateway::ScriptedResponse;

namespace {

gateway::BackendConfig quiet_config(int retries = 0) {
  gateway::BackendConfig cfg;
  cfg.max_retries = retries;
  cfg.min_retry_backoff_ms = 1;
  return cfg;
}

TranslationUnit make_unit(const std::string& id, Fields english) {
  TranslationUnit u;
  u.unit_id = id;
  u.source_id = id;
  u.english_fields = std::move(english);
  return u;
}

Fields two_fields() { return {{"question", "Is aspirin an NSAID?"}, {"answer", "Yes, it is."}}; }

std::string arabic_response(const Fields& english, const std::string& prefix) {
  Fields ar;
  for (const auto& f : english) ar.push_back({f.name, prefix + " " + f.text});
  return encode_fields(ar);
}

// Translate once, then one score per round and a refine between rounds.
void script_unit(gateway::Script& script, const TranslationUnit& u, const std::vector<int>& scores) {
  script[u.unit_id + "/translate/1"].push_back(ScriptedResponse::ok(arabic_response(u.english_fields, "ت1")));
  for (std::size_t k = 0; k < scores.size(); ++k) {
    int round = static_cast<int>(k) + 1;
    script[u.unit_id + "/score/" + std::to_string(round)].push_back(
        ScriptedResponse::ok("Score: " + std::to_string(scores[k]) + ". Round " + std::to_string(round) + "."));
    if (k + 1 < scores.size()) {
      script[u.unit_id + "/refine/" + std::to_string(round + 1)].push_back(
          ScriptedResponse::ok(arabic_response(u.english_fields, "ت" + std::to_string(round + 1))));
    }
  }
}

struct Harness {
  std::shared_ptr<gateway::MockBackend> mock;
  std::unique_ptr<gateway::Gateway> gw;
  std::unique_ptr<Translator> tr;
  explicit Harness(gateway::Script script, int retries = 0) {
    mock = std::make_shared<gateway::MockBackend>(std::move(script));
    gw = std::make_unique<gateway::Gateway>(mock, quiet_config(retries), nullptr, [](auto) {});
    tr = std::make_unique<Translator>(*gw);
  }
};

LoopConfig loop(int threshold, int max_rounds) {
  LoopConfig cfg;
  cfg.threshold = threshold;
  cfg.max_rounds = max_rounds;
  return cfg;
}

}  // namespace

TEST(Protocol, SingleFieldAlignment) {
  Fields en = {{"question", "Is aspirin an NSAID?"}};
  Harness h({{"u/translate/1", {ScriptedResponse::ok("<<<1|question>>>\nهل الأسبرين مضاد التهاب غير ستيرويدي؟")}}});
  auto ar = h.tr->translate("u", en);
  ASSERT_EQ(ar.size(), 1u);
  EXPECT_EQ(ar[0].name, "question");
  EXPECT_EQ(ar[0].text, "هل الأسبرين مضاد التهاب غير ستيرويدي؟");
}

TEST(Protocol, MisalignedSegmentsThrow) {
  Fields en = {{"a", "1"}, {"b", "2"}, {"c", "3"}};
  EXPECT_THROW(decode_fields("<<<1>>>\nا\n<<<2>>>\nب", en), AlignmentError);
  Harness h({{"u/translate/1", {ScriptedResponse::ok("<<<1>>>\nا\n<<<2>>>\nب")}}});
  EXPECT_THROW(h.tr->translate("u", en), AlignmentError);
}

TEST(Protocol, RoundTripKeepsFieldNames) {
  auto en = two_fields();
  auto ar = decode_fields(arabic_response(en, "ع"), en);
  std::vector<std::string> a, b;
  for (auto& f : en) a.push_back(f.name);
  for (auto& f : ar) b.push_back(f.name);
  EXPECT_EQ(a, b);
  EXPECT_EQ(ar[1].text, "ع Yes, it is.");
}

TEST(Protocol, OutOfOrderOrEmptySegmentsThrow) {
  auto en = two_fields();
  EXPECT_THROW(decode_fields("<<<2>>>\nا\n<<<1>>>\nب", en), AlignmentError);
  EXPECT_THROW(decode_fields("<<<1>>>\n \n<<<2>>>\nب", en), AlignmentError);
}

TEST(Score, ParsesScriptedStrings) {
  auto s = parse_score("Score: 85. Terminology preserved.", "judge");
  EXPECT_EQ(s.value, 85);
  EXPECT_EQ(s.rationale, "Terminology preserved.");
  EXPECT_EQ(s.scorer_tag, "judge");
  EXPECT_THROW(parse_score("excellent", "judge"), ScoreParseError);
  EXPECT_EQ(parse_score("Score: 100", "judge").value, 100);
  EXPECT_EQ(parse_score("Score: 0", "judge").value, 0);
  EXPECT_EQ(parse_score("Score: 72/100\nRationale: minor slips", "judge").value, 72);
}

TEST(Score, ThroughTranslator) {
  Harness h({{"u/score/1", {ScriptedResponse::ok("Score: 85. Terminology preserved.")}},
             {"v/score/1", {ScriptedResponse::ok("excellent")}}});
  auto en = two_fields();
  EXPECT_EQ(h.tr->score("u", 1, en, en).value, 85);
  EXPECT_THROW(h.tr->score("v", 1, en, en), ScoreParseError);
}

TEST(Refine, ChangedIdenticalAndMisaligned) {
  auto en = two_fields();
  auto ar = decode_fields(arabic_response(en, "ت1"), en);
  Harness h({{"a/refine/2", {ScriptedResponse::ok(arabic_response(en, "ت2"))}},
             {"b/refine/2", {ScriptedResponse::ok(encode_fields(ar))}},
             {"c/refine/2", {ScriptedResponse::ok("<<<1>>>\nفقط")}}});
  QualityScore prior{60, "weak", "judge"};
  EXPECT_NE(h.tr->refine("a", 2, en, ar, prior), ar);
  EXPECT_EQ(h.tr->refine("b", 2, en, ar, prior), ar);
  EXPECT_THROW(h.tr->refine("c", 2, en, ar, prior), AlignmentError);
}

TEST(Loop, AcceptsOnThirdRound) {
  auto u = make_unit("u", two_fields());
  gateway::Script s;
  script_unit(s, u, {60, 75, 90});
  Harness h(s);
  h.tr->run_iterative(u, loop(80, 5));
  EXPECT_EQ(u.status, UnitStatus::auto_accepted);
  ASSERT_EQ(u.rounds.size(), 3u);
  EXPECT_EQ(u.rounds[2].score.value, 90);
  EXPECT_EQ(u.arabic_fields, u.rounds[2].arabic_snapshot);
  EXPECT_EQ(h.mock->calls(), 6);  // translate, 3 scores, 2 refines
}

TEST(Loop, RoundCapSendsToReview) {
  auto u = make_unit("u", two_fields());
  gateway::Script s;
  script_unit(s, u, {60, 70});
  Harness h(s);
  h.tr->run_iterative(u, loop(80, 2));
  EXPECT_EQ(u.status, UnitStatus::needs_review);
  EXPECT_EQ(u.rounds.size(), 2u);
  EXPECT_EQ(u.metadata["threshold"], 80);
}

TEST(Loop, ScoreEqualToThresholdAccepts) {
  auto u = make_unit("u", two_fields());
  gateway::Script s;
  script_unit(s, u, {80});
  Harness h(s);
  h.tr->run_iterative(u, loop(80, 3));
  EXPECT_EQ(u.status, UnitStatus::auto_accepted);
  EXPECT_EQ(u.rounds.size(), 1u);
}

TEST(Loop, TerminationAndMonotoneGateOverManyScripts) {
  SeededRng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int max_rounds = 1 + static_cast<int>(rng.uniform_index(5));
    std::vector<int> scores;
    for (int k = 0; k < 6; ++k) scores.push_back(static_cast<int>(rng.uniform_index(101)));
    auto u = make_unit("u" + std::to_string(trial), two_fields());
    gateway::Script s;
    script_unit(s, u, scores);
    Harness h(s);
    h.tr->run_iterative(u, loop(80, max_rounds));
    EXPECT_LE(static_cast<int>(u.rounds.size()), max_rounds);
    bool any_pass = std::any_of(u.rounds.begin(), u.rounds.end(), [](auto& r) { return r.score.value >= 80; });
    EXPECT_EQ(u.status == UnitStatus::auto_accepted, any_pass);
    EXPECT_TRUE(same_field_names(u.english_fields, u.arabic_fields));
  }
}

TEST(Loop, ResumeAfterFailureMatchesUninterruptedRun) {
  auto fresh = make_unit("u", two_fields());
  gateway::Script full;
  script_unit(full, fresh, {60, 75, 90});

  TranslationUnit straight = fresh;
  Harness(full).tr->run_iterative(straight, loop(80, 5));

  // Same script, but the second score call fails the first time.
  gateway::Script broken = full;
  auto& seq = broken["u/score/2"];
  seq.insert(seq.begin(), ScriptedResponse::fail());
  Harness h(broken, 0);
  TranslationUnit resumed = fresh;
  EXPECT_THROW(h.tr->run_iterative(resumed, loop(80, 5)), ExhaustedRetries);
  EXPECT_EQ(resumed.status, UnitStatus::pending);
  EXPECT_EQ(resumed.rounds.size(), 1u);
  EXPECT_EQ(resumed.draft_round, 2);
  h.tr->run_iterative(resumed, loop(80, 5));
  EXPECT_EQ(resumed, straight);
  EXPECT_EQ(h.mock->calls_for("u/refine/2"), 1);
}

TEST(Loop, NonPendingUnitRejected) {
  auto u = make_unit("u", two_fields());
  u.status = UnitStatus::needs_review;
  Harness h({});
  EXPECT_THROW(h.tr->run_iterative(u, loop(80, 3)), InvalidState);
}

TEST(Batch, ParallelEqualsSerial) {
  std::vector<TranslationUnit> units;
  gateway::Script s;
  for (int i = 0; i < 30; ++i) {
    units.push_back(make_unit("u" + std::to_string(i), two_fields()));
    script_unit(s, units.back(), {50 + i, 70 + i % 20, 85});
  }
  Harness a(s), b(s);
  auto serial = run_batch(*a.tr, units, loop(80, 3), 1);
  auto par = run_batch(*b.tr, units, loop(80, 3), 4);
  EXPECT_EQ(serial.units, par.units);
  EXPECT_EQ(serial.failed(), 0u);
}

TEST(Audit, FivePercentOfHundredDeterministic) {
  std::vector<TranslationUnit> accepted;
  for (int i = 0; i < 100; ++i) {
    auto u = make_unit("unit-" + std::to_string(i), two_fields());
    u.status = UnitStatus::auto_accepted;
    accepted.push_back(u);
  }
  LoopConfig cfg;
  cfg.audit_rate = 0.05;
  cfg.rng_seed = 1234;
  auto first = audit_sample(accepted, cfg);
  ASSERT_EQ(first.size(), 5u);
  EXPECT_EQ(std::set<std::string>(first.begin(), first.end()).size(), 5u);
  for (int r = 0; r < 10; ++r) EXPECT_EQ(audit_sample(accepted, cfg), first);

  // Pure function of the sorted ids: input order is irrelevant.
  auto reversed = accepted;
  std::reverse(reversed.begin(), reversed.end());
  EXPECT_EQ(audit_sample(reversed, cfg), first);

  // Independent recomputation from the sorted id list.
  std::vector<std::string> ids;
  for (auto& u : accepted) ids.push_back(u.unit_id);
  std::sort(ids.begin(), ids.end());
  std::vector<std::string> expect;
  for (auto i : sample_indices(ids.size(), 5, 1234)) expect.push_back(ids[i]);
  EXPECT_EQ(first, expect);

  cfg.audit_rate = 0.0;
  EXPECT_TRUE(audit_sample(accepted, cfg).empty());
  cfg.audit_rate = 1.0;
  EXPECT_EQ(audit_sample(accepted, cfg).size(), 100u);
}

TEST(Units, TransitionsAndEligibility) {
  auto u = make_unit("u", two_fields());
  EXPECT_FALSE(eligible_for_corpus(u));
  EXPECT_FALSE(can_transition(u, UnitStatus::human_approved));
  EXPECT_THROW(transition(u, UnitStatus::human_approved), InvalidState);
  u.arabic_fields = two_fields();
  transition(u, UnitStatus::needs_review);
  transition(u, UnitStatus::rejected);
  EXPECT_FALSE(eligible_for_corpus(u));
  auto a = make_unit("a", two_fields());
  a.arabic_fields = two_fields();
  transition(a, UnitStatus::auto_accepted);
  EXPECT_TRUE(eligible_for_corpus(a));
  a.audit_selected = true;
  EXPECT_FALSE(eligible_for_corpus(a));
}

TEST(Units, JsonRoundTrip) {
  auto u = make_unit("u", two_fields());
  gateway::Script s;
  script_unit(s, u, {60, 85});
  Harness(s).tr->run_iterative(u, loop(80, 3));
  EXPECT_EQ(unit_from_json(to_json(u)), u);
}

TEST(Templates, LoadValidatesPlaceholders) {
  testutil::TempDir dir;
  EXPECT_NO_THROW(PromptTemplates::load(dir.path()));
  {
    std::ofstream(dir / "score.txt") << "grade {english} only";
  }
  EXPECT_THROW(PromptTemplates::load(dir.path()), TemplateError);
}

TEST(Calibration, CsvHasOneRowPerScoredUnit) {
  auto u = make_unit("u", two_fields());
  gateway::Script s;
  script_unit(s, u, {88});
  Harness(s).tr->run_iterative(u, loop(80, 3));
  auto csv = calibration_csv({u, make_unit("pending", two_fields())});
  EXPECT_EQ(csv.find("score,unit_id,round,status,english,arabic\n88,\"u\",1,auto_accepted,"), 0u);
  EXPECT_EQ(csv.find("pending"), std::string::npos);
}
