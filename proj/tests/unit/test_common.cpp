// Copyright 2026 The medforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <set>
#include <vector>

#include "medforge/common/clock.hpp"
#include "medforge/common/error.hpp"
#include "medforge/common/hashing.hpp"
#include "medforge/common/io.hpp"
#include "medforge/common/parallel.hpp"
#include "medforge/common/rng.hpp"
#include "medforge/common/templates.hpp"
#include "medforge/common/utf8.hpp"
#include "test_util.hpp"

using namespace medforge;

TEST(Templates, SubstitutesKnownPlaceholdersAndKeepsOthers) {
  EXPECT_EQ(render_template("Q: {question} {x} {}", {{"question", "why?"}}), "Q: why? {x} {}");
}

TEST(Templates, MissingRequiredPlaceholderThrows) {
  EXPECT_THROW(render_template("no slots", {}, {"question"}), TemplateError);
  EXPECT_TRUE(has_placeholder("a {b} c", "b"));
  EXPECT_FALSE(has_placeholder("a {bc} c", "b"));
}

TEST(Templates, ReadTemplateDropsLeadingCommentBlock) {
  testutil::TempDir dir;
  write_text_atomic(dir / "t.txt", "# one\n# two\n\nbody {x}\n# kept\n");
  EXPECT_EQ(read_template(dir / "t.txt"), "body {x}\n# kept\n");
  write_text_atomic(dir / "plain.txt", "no header\n");
  EXPECT_EQ(read_template(dir / "plain.txt"), "no header\n");
}

TEST(Hashing, Sha256KnownVector) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Rng, SampleIndicesSortedDistinctAndDeterministic) {
  auto a = sample_indices(100, 5, 42);
  auto b = sample_indices(100, 5, 42);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 5u);
  for (auto i : a) EXPECT_LT(i, 100u);
  EXPECT_EQ(sample_indices(10, 10, 1).size(), 10u);
  EXPECT_TRUE(sample_indices(10, 0, 1).empty());
}

TEST(Rng, ShuffleIsPermutation) {
  auto p = shuffled_indices(50, 3);
  std::vector<std::size_t> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_EQ(p, shuffled_indices(50, 3));
}

TEST(Rng, Uniform01InRange) {
  SeededRng rng(9);
  for (int i = 0; i < 1000; ++i) {
    double u = rng.uniform01();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(Clock, LogicalClockSteps) {
  LogicalClock c;
  EXPECT_EQ(c.now_ms(), 1704067200000);
  EXPECT_EQ(c.now_ms(), 1704067201000);
}

TEST(Clock, Iso8601RoundTrip) {
  EXPECT_EQ(format_iso8601(1704067200000), "2024-01-01T00:00:00.000Z");
  for (std::int64_t t : {0LL, 1704067200123LL, 1893456000999LL}) EXPECT_EQ(parse_iso8601(format_iso8601(t)), t);
  EXPECT_THROW(parse_iso8601("yesterday"), SchemaError);
}

TEST(Io, JsonlReportsBadLineNumber) {
  try {
    parse_jsonl("{\"a\":1}\n{oops\n{\"b\":2}\n");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.to_json()["line"], 2);
    EXPECT_EQ(e.to_json()["error"], "SchemaError");
  }
}

TEST(Io, JsonlSkipsBlankLinesAndRoundTrips) {
  testutil::TempDir dir;
  std::vector<Json> recs = {{{"k", "ألم"}}, {{"k", 2}}};
  write_jsonl_atomic(dir / "x.jsonl", recs);
  auto back = read_jsonl(dir / "x.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].value, recs[0]);
  EXPECT_EQ(back[1].line, 2u);
  EXPECT_EQ(parse_jsonl("\n{\"a\":1}\n\n").size(), 1u);
}

TEST(Utf8, ValidationAndTrim) {
  EXPECT_TRUE(is_valid_utf8("ألم في الرأس"));
  EXPECT_FALSE(is_valid_utf8("\xff\xfe"));
  EXPECT_EQ(trim("  x y \n"), "x y");
}

TEST(Parallel, MatchesSerialAndPropagatesErrors) {
  std::vector<int> serial(1000), par(1000);
  serial_for(serial.size(), [&](std::size_t i) { serial[i] = static_cast<int>(i * i % 97); });
  parallel_for(par.size(), 4, [&](std::size_t i) { par[i] = static_cast<int>(i * i % 97); });
  EXPECT_EQ(serial, par);
  EXPECT_THROW(parallel_for(10, 4,
                            [](std::size_t i) {
                              if (i == 7) throw InvalidState("boom");
                            }),
               InvalidState);
}

TEST(Errors, CountMismatchPayload) {
  CountMismatch e("MedQA", 1273, 10);
  auto j = e.to_json();
  EXPECT_EQ(j["error"], "CountMismatch");
  EXPECT_EQ(j["expected"], 1273);
  EXPECT_EQ(j["got"], 10);
}
