// Copyright 2026 The assertkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "assertkit/caps_builder.h"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "assertkit/corpus_miner.h"
#include "assertkit/java_lexer.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace assertkit {
namespace {

using ::testing::ElementsAre;

TokenList toks(std::string_view code) { return normalize_code(code); }

std::size_t count(const TokenList& list, std::string_view token) {
  return static_cast<std::size_t>(std::count(list.begin(), list.end(), token));
}

SkipReason skip_reason_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const SkipError& e) {
    return e.reason();
  }
  ADD_FAILURE() << "no SkipError";
  return SkipReason::kDuplicate;
}

TEST(ClassifyAssertTest, AllTwelveKinds) {
  const std::vector<std::pair<std::string, AssertType>> cases = {
      {"assertTrue(x);", AssertType::kTrue},
      {"assertFalse(x);", AssertType::kFalse},
      {"assertNull(x);", AssertType::kNull},
      {"assertNotNull(x);", AssertType::kNotNull},
      {"assertEquals(1, x);", AssertType::kEquals},
      {"assertSame(a, b);", AssertType::kSame},
      {"assertArrayEquals(a, b);", AssertType::kArrayEquals},
      {"assertThat(x, is(1));", AssertType::kThat},
      {"assertNotEquals(1, x);", AssertType::kNotEquals},
      {"assertNotSame(a, b);", AssertType::kNotSame},
      {"assertThrows(E.class, () -> f());", AssertType::kThrows},
      {"fail(\"boom\");", AssertType::kFail},
  };
  for (const auto& [code, type] : cases) EXPECT_EQ(classify_assert(toks(code)), type) << code;
  EXPECT_EQ(classify_assert(toks("org.junit.Assert.assertNull(x);")), AssertType::kNull);
  EXPECT_EQ(skip_reason_of([] { classify_assert(toks("verify(mock);")); }),
            SkipReason::kUnknownAssertKind);
}

TEST(ClassifyAssertTest, OtherBucket) {
  EXPECT_EQ(display_bucket(AssertType::kNotEquals), "Other");
  EXPECT_EQ(display_bucket(AssertType::kFail), "Other");
  EXPECT_EQ(display_bucket(AssertType::kThrows), "Other");
  EXPECT_EQ(display_bucket(AssertType::kNotSame), "Other");
  EXPECT_EQ(display_bucket(AssertType::kEquals), "Equals");
  for (AssertType t : kAllAssertTypes) {
    EXPECT_EQ(assert_type_from_string(to_string(t)), t);
  }
}

TEST(FindAssertTest, StatementLevelOnly) {
  EXPECT_EQ(find_assert_statements(toks("{ int a = 1; assertEquals(1, a); }")).size(), 1u);
  EXPECT_EQ(find_assert_statements(toks("{ if (ok) assertTrue(x); }")).size(), 1u);
  EXPECT_EQ(find_assert_statements(toks("{ Assert.assertTrue(x); }")).size(), 1u);
  // A nested assert inside a lambda argument belongs to the outer statement.
  EXPECT_EQ(find_assert_statements(
                toks("{ assertThrows(E.class, () -> { assertTrue(f()); }); }"))
                .size(),
            1u);
  // Helper calls and string contents are not asserts.
  EXPECT_EQ(find_assert_statements(toks("{ log(\"assertTrue(x);\"); check(x); }")).size(), 0u);
  EXPECT_EQ(find_assert_statements(toks("{ x = assertTrue; }")).size(), 0u);
}

TEST(ExtractAssertTest, MasksTheOnlyAssert) {
  const TokenList test = toks(
      "public void testCount() { Inventory i = new Inventory(); i.addItem(\"x\");"
      " assertEquals(1, i.count()); }");
  const MaskedTest m = extract_assert(test);
  EXPECT_EQ(m.type, AssertType::kEquals);
  EXPECT_EQ(java::join_tokens(m.assert_tokens), "assertEquals ( 1 , i . count ( ) ) ;");
  EXPECT_EQ(count(m.prefix, kAssertPlaceholder), 1u);
  EXPECT_EQ(m.prefix[m.placeholder_index], kAssertPlaceholder);
  EXPECT_EQ(m.prefix.back(), "}");
  EXPECT_EQ(restore_assert(m.prefix, m.assert_tokens), test);
}

TEST(ExtractAssertTest, SkipReasons) {
  EXPECT_EQ(skip_reason_of([] { extract_assert(toks("void t() { f(); }")); }),
            SkipReason::kNoAssert);
  EXPECT_EQ(skip_reason_of([] {
              extract_assert(toks("void t() { assertTrue(a); assertFalse(b); }"));
            }),
            SkipReason::kMultiAssert);
  EXPECT_EQ(skip_reason_of([] { normalize_code("void t() { \"open"); }),
            SkipReason::kLexError);
}

TEST(ConsolidateTest, Layout) {
  const TokenList prefix = {"t", kAssertPlaceholder.data()};
  const TokenList focal = {"f"};
  const TokenList summary = {"does", "f"};
  EXPECT_THAT(consolidate(prefix, focal, summary),
              ElementsAre("t", "<AssertPlaceHolder>", "<FM>", "f", "<BOS>", "does", "f",
                          "<EOS>"));
  EXPECT_THAT(consolidate(prefix, focal, summary, false),
              ElementsAre("t", "<AssertPlaceHolder>", "<FM>", "f"));
  const TokenList full = consolidate(prefix, focal, summary);
  EXPECT_EQ(strip_summarization(full), consolidate(prefix, focal, summary, false));
  EXPECT_THAT(summarization_segment(full), ElementsAre("does", "f"));
  EXPECT_TRUE(summarization_segment(strip_summarization(full)).empty());
}

TEST(CapsInstanceTest, JsonRoundTrip) {
  CapsInstance inst;
  inst.id = "c000001";
  inst.repo = "r";
  inst.source = {"a", "<AssertPlaceHolder>", "<FM>", "b", "<BOS>", "c", "<EOS>"};
  inst.target = {"fail", "(", ")", ";"};
  inst.assert_type = AssertType::kFail;
  const Json j = to_json(inst);
  EXPECT_EQ(j["src"], "a <AssertPlaceHolder> <FM> b <BOS> c <EOS>");
  EXPECT_EQ(j["assert_type"], "Fail");
  const CapsInstance back = caps_instance_from_json(j);
  EXPECT_EQ(back.source, inst.source);
  EXPECT_EQ(back.target, inst.target);
  EXPECT_EQ(back.assert_type, inst.assert_type);
}

TEST(DeduplicateTest, KeepsFirstOccurrenceAndIsIdempotent) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 50; ++round) {
    std::vector<CapsInstance> items;
    for (int i = 0; i < 30; ++i) {
      CapsInstance inst;
      inst.id = std::to_string(i);
      inst.source = oracle::random_tokens(rng, 2, 2, 1);
      inst.target = oracle::random_tokens(rng, 1, 2, 1);
      items.push_back(inst);
    }
    const auto once = deduplicate(items);
    const auto twice = deduplicate(once);
    ASSERT_EQ(once.size(), twice.size());
    for (std::size_t i = 0; i < once.size(); ++i) EXPECT_EQ(once[i].id, twice[i].id);
    std::set<std::pair<TokenList, TokenList>> keys;
    for (const auto& inst : once) keys.insert({inst.source, inst.target});
    EXPECT_EQ(keys.size(), once.size());
    // First occurrences survive, in order.
    std::set<std::pair<TokenList, TokenList>> seen;
    std::vector<std::string> expected_ids;
    for (const auto& inst : items) {
      if (seen.insert({inst.source, inst.target}).second) expected_ids.push_back(inst.id);
    }
    std::vector<std::string> ids;
    for (const auto& inst : once) ids.push_back(inst.id);
    EXPECT_EQ(ids, expected_ids);
  }
}

TEST(SplitTest, RejectsBadInput) {
  auto two_repos = oracle::synthetic_instances(2, 3, 1);
  EXPECT_THROW(split_dataset(two_repos, SplitRatios{}, 1), std::invalid_argument);
  auto many = oracle::synthetic_instances(10, 3, 1);
  EXPECT_THROW(split_dataset(many, SplitRatios{8, 0, 1}, 1), std::invalid_argument);
  EXPECT_THROW(split_dataset(many, SplitRatios{8, 1, -1}, 1), std::invalid_argument);
}

TEST(SplitTest, ThreeReposGiveOneEach) {
  auto items = oracle::synthetic_instances(3, 9, 2);
  const DatasetSplit s = split_dataset(items, SplitRatios{}, 3);
  EXPECT_FALSE(s.train.empty());
  EXPECT_FALSE(s.valid.empty());
  EXPECT_FALSE(s.test.empty());
}

TEST(SplitTest, SameSeedSameSplit) {
  auto items = oracle::synthetic_instances(30, 15, 4);
  const DatasetSplit a = split_dataset(items, SplitRatios{}, 99);
  const DatasetSplit b = split_dataset(items, SplitRatios{}, 99);
  auto ids = [](const std::vector<CapsInstance>& v) {
    std::vector<std::string> out;
    for (const auto& i : v) out.push_back(i.id);
    return out;
  };
  EXPECT_EQ(ids(a.train), ids(b.train));
  EXPECT_EQ(ids(a.valid), ids(b.valid));
  EXPECT_EQ(ids(a.test), ids(b.test));
}

// Property: whole repositories, no leakage, every instance placed once, and
// instance shares near 8:1:1 across seeds.
TEST(SplitPropertyTest, RepoDisjointAndNearTarget) {
  auto items = oracle::synthetic_instances(30, 15, 8);
  std::set<std::vector<std::string>> distinct_trains;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DatasetSplit s = split_dataset(items, SplitRatios{}, seed);
    std::map<std::string, int> owner;
    auto claim = [&](const std::vector<CapsInstance>& part, int tag) {
      for (const auto& inst : part) {
        auto [it, fresh] = owner.emplace(inst.repo, tag);
        EXPECT_EQ(it->second, tag) << "repo " << inst.repo << " leaks, seed " << seed;
      }
    };
    claim(s.train, 0);
    claim(s.valid, 1);
    claim(s.test, 2);
    EXPECT_EQ(s.train.size() + s.valid.size() + s.test.size(), items.size());
    const double n = static_cast<double>(items.size());
    EXPECT_NEAR(s.train.size() / n, 0.8, 0.10);
    EXPECT_NEAR(s.valid.size() / n, 0.1, 0.10);
    EXPECT_NEAR(s.test.size() / n, 0.1, 0.10);
    std::vector<std::string> train_repos;
    for (const auto& inst : s.train) train_repos.push_back(inst.repo);
    distinct_trains.insert(train_repos);
  }
  EXPECT_GT(distinct_trains.size(), 1u);  // the seed matters
}

TEST(CorpusStatsTest, HandComputed) {
  std::vector<CapsInstance> items(2);
  items[0].source = {"a", "<BOS>", "s", "<EOS>"};
  items[0].target = {"x", ";"};
  items[1].source = {"a", "b", "c", "<BOS>", "s", "t", "u", "<EOS>"};
  items[1].target = {"x", "y", "z", ";"};
  const CorpusStats s = corpus_stats(items);
  EXPECT_EQ(s.instances, 2u);
  EXPECT_EQ(s.source.max, 8u);
  EXPECT_EQ(s.source.min, 4u);
  EXPECT_DOUBLE_EQ(s.source.avg, 6.0);
  EXPECT_EQ(s.summarization.max, 3u);
  EXPECT_EQ(s.summarization.min, 1u);
  EXPECT_DOUBLE_EQ(s.summarization.avg, 2.0);
  EXPECT_DOUBLE_EQ(s.assert_statement.avg, 3.0);
  EXPECT_THROW(corpus_stats(std::vector<CapsInstance>{}), std::invalid_argument);
}

class FixtureBuildTest : public ::testing::Test {
 protected:
  void SetUp() override {
    mined_ = mine_corpus(std::filesystem::path(ASSERTKIT_FIXTURES) / "trace_corpus",
                         ScanOptions{});
    index_ = std::make_unique<CorpusIndex>(mined_.records);
    trace_ = trace_corpus(mined_.records, *index_);
  }

  MineResult mined_;
  std::unique_ptr<CorpusIndex> index_;
  TraceResult trace_;
};

TEST_F(FixtureBuildTest, InstancesAndSkipReasons) {
  const BuildReport report = build_instances(trace_.pairs, BuildOptions{});
  EXPECT_EQ(report.instances.size(), 7u);
  EXPECT_EQ(report.skipped.at(SkipReason::kMultiAssert), 1u);      // testGetMajor
  EXPECT_EQ(report.skipped.at(SkipReason::kNoSummarization), 1u);  // testReverse
  for (const CapsInstance& inst : report.instances) {
    EXPECT_EQ(count(inst.source, kAssertPlaceholder), 1u) << inst.id;
    EXPECT_EQ(count(inst.source, kSummaryBegin), 1u) << inst.id;
    EXPECT_EQ(count(inst.source, kSummaryEnd), 1u) << inst.id;
    EXPECT_EQ(count(inst.source, kFocalMarker), 1u) << inst.id;
    EXPECT_FALSE(inst.target.empty());
    EXPECT_EQ(inst.target.back(), ";");
  }
}

TEST_F(FixtureBuildTest, DeltaFromSummaryReachesTheSource) {
  const BuildReport report = build_instances(trace_.pairs, BuildOptions{});
  bool found = false;
  for (const CapsInstance& inst : report.instances) {
    const std::string src = java::join_tokens(inst.source);
    if (src.find("getTrueWindDirection ( ) {") == std::string::npos) continue;
    found = true;
    const TokenList summary = summarization_segment(inst.source);
    EXPECT_EQ(count(summary, "0.1"), 1u);
    EXPECT_EQ(java::join_tokens(inst.target),
              "assertEquals ( 234.5 , sensor . getTrueWindDirection ( ) , 0.1 ) ;");
  }
  EXPECT_TRUE(found);
}

TEST_F(FixtureBuildTest, RoundTripRestoresEveryTest) {
  for (const TestFocalPair& p : trace_.pairs) {
    const TokenList test = p.test->declaration_tokens();
    try {
      const MaskedTest m = extract_assert(test);
      EXPECT_EQ(restore_assert(m.prefix, m.assert_tokens), test);
    } catch (const SkipError&) {
    }
  }
}

TEST_F(FixtureBuildTest, AblationKeepsIdsAndDropsSummary) {
  BuildOptions without;
  without.with_summarization = false;
  const BuildReport full = build_instances(trace_.pairs, BuildOptions{});
  const BuildReport bare = build_instances(trace_.pairs, without);
  ASSERT_EQ(full.instances.size(), bare.instances.size());
  for (std::size_t i = 0; i < full.instances.size(); ++i) {
    EXPECT_EQ(full.instances[i].id, bare.instances[i].id);
    EXPECT_EQ(full.instances[i].target, bare.instances[i].target);
    EXPECT_EQ(count(bare.instances[i].source, kSummaryBegin), 0u);
    EXPECT_EQ(bare.instances[i].source, strip_summarization(full.instances[i].source));
  }
}

TEST_F(FixtureBuildTest, DuplicatesAreCounted) {
  std::vector<TestFocalPair> doubled = trace_.pairs;
  doubled.insert(doubled.end(), trace_.pairs.begin(), trace_.pairs.end());
  const BuildReport report = build_instances(doubled, BuildOptions{});
  EXPECT_EQ(report.instances.size(), 7u);
  EXPECT_EQ(report.skipped.at(SkipReason::kDuplicate), 7u);
}

TEST_F(FixtureBuildTest, TokenBudgetFlagsLongSources) {
  BuildOptions tight;
  tight.token_budget = 40;
  const BuildReport report = build_instances(trace_.pairs, tight);
  EXPECT_EQ(report.instances.size(), 7u);  // flagged, not dropped
  std::size_t over = 0;
  for (const CapsInstance& inst : report.instances) over += inst.source.size() > 40;
  EXPECT_EQ(report.over_budget_ids.size(), over);
  EXPECT_GT(over, 0u);
}

}  // namespace
}  // namespace assertkit
