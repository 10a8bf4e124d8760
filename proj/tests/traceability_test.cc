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

#include "assertkit/traceability.h"

#include <filesystem>
#include <map>

#include "assertkit/corpus_miner.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace assertkit {
namespace {

MethodRecord method(const std::string& cls, const std::string& name,
                    std::vector<std::string> params = {}, bool varargs = false) {
  MethodRecord m;
  m.repo_id = "r";
  m.path = "src/main/java/p/" + cls + ".java";
  m.package_name = "p";
  m.class_name = cls;
  m.class_chain = cls;
  m.name = name;
  m.return_type = "int";
  m.parameter_types = std::move(params);
  m.varargs = varargs;
  m.signature = "int " + name + "(" + std::to_string(m.parameter_types.size()) + ")";
  m.body_tokens = {"{", "return", "1", ";", "}"};
  return m;
}

MethodRecord test_method(const std::string& cls, const std::string& name,
                         std::vector<InvocationRef> calls) {
  MethodRecord t = method(cls, name);
  t.path = "src/test/java/p/" + cls + ".java";
  t.return_type = "void";
  t.is_test = true;
  t.annotations = {"Test"};
  t.invocations = std::move(calls);
  return t;
}

TEST(StripAffixTest, PrefixThenSuffix) {
  EXPECT_EQ(strip_test_affix("testFoo"), "Foo");
  EXPECT_EQ(strip_test_affix("TestFoo"), "Foo");
  EXPECT_EQ(strip_test_affix("FooTest"), "Foo");
  EXPECT_EQ(strip_test_affix("test"), "");
  EXPECT_EQ(strip_test_affix("plain"), "plain");
}

TEST(NamingConventionTest, MatchesIgnoringFirstLetterCase) {
  std::vector<MethodRecord> records = {
      method("Stack", "push", {"int"}),
      method("Stack", "pop"),
      test_method("StackTest", "testPush", {{"push", 1, "Stack"}}),
  };
  const CorpusIndex index(records);
  auto focal = match_by_name(records[2], index);
  ASSERT_TRUE(focal.has_value());
  EXPECT_EQ((*focal)->name, "push");
}

TEST(NamingConventionTest, UsesClassNamedAfterTestClass) {
  // No call reaches Stack, but StackTest names it.
  std::vector<MethodRecord> records = {
      method("Stack", "pop"),
      test_method("StackTest", "testPop", {}),
  };
  const CorpusIndex index(records);
  EXPECT_TRUE(match_by_name(records[1], index).has_value());
}

TEST(NamingConventionTest, AmbiguousNameFails) {
  std::vector<MethodRecord> records = {
      method("A", "size"),
      method("B", "size"),
      test_method("SizeTest", "testSize", {{"size", 0, "A"}, {"size", 0, "B"}}),
  };
  const CorpusIndex index(records);
  EXPECT_FALSE(match_by_name(records[2], index).has_value());
}

TEST(NamingConventionTest, IgnoresEmptyBodies) {
  std::vector<MethodRecord> records = {
      method("A", "reset"),
      test_method("ATest", "testReset", {{"reset", 0, "A"}}),
  };
  records[0].body_tokens = {"{", "}"};
  const CorpusIndex index(records);
  EXPECT_FALSE(match_by_name(records[1], index).has_value());
}

TEST(CallGraphTest, FocalClassIsStrictMaximum) {
  std::vector<MethodRecord> records = {
      method("A", "f"), method("B", "g"),
      test_method("T", "checks", {{"f", 0, "A"}, {"g", 0, "B"}}),
      test_method("T", "checksMore", {{"f", 0, "A"}, {"f", 0, "A"}, {"g", 0, "B"}}),
  };
  const CorpusIndex index(records);
  EXPECT_FALSE(select_focal_class(records[2], index).has_value());  // tie
  EXPECT_EQ(select_focal_class(records[3], index), "p.A");
}

TEST(CallGraphTest, NeedsExactlyOneIntersectingMethod) {
  std::vector<MethodRecord> records = {
      method("A", "f"), method("A", "g", {"int"}),
      test_method("T", "usesOne", {{"f", 0, "A"}}),
      test_method("T", "usesTwo", {{"f", 0, "A"}, {"g", 1, "A"}}),
      test_method("T", "wrongArity", {{"g", 2, "A"}}),
  };
  const CorpusIndex index(records);
  auto one = map_test_to_focal(records[2], index);
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(one->provenance, Provenance::kStaticCallGraph);
  EXPECT_EQ(one->focal->name, "f");
  EXPECT_FALSE(map_test_to_focal(records[3], index).has_value());
  EXPECT_FALSE(map_test_to_focal(records[4], index).has_value());
}

TEST(CallGraphTest, VarargsAcceptsShortAndLongCalls) {
  std::vector<MethodRecord> records = {
      method("A", "log", {"String", "Object..."}, true),
      test_method("T", "a", {{"log", 1, "A"}}),
      test_method("T", "b", {{"log", 4, "A"}}),
      test_method("T", "c", {{"log", 0, "A"}}),
  };
  const CorpusIndex index(records);
  EXPECT_TRUE(map_test_to_focal(records[1], index).has_value());
  EXPECT_TRUE(map_test_to_focal(records[2], index).has_value());
  EXPECT_FALSE(map_test_to_focal(records[3], index).has_value());
}

TEST(CorpusIndexTest, TestClassesAreNotProduction) {
  std::vector<MethodRecord> records = {method("A", "f"), test_method("ATest", "testF", {})};
  MethodRecord helper = method("Fixtures", "build");
  helper.path = "src/test/java/p/Fixtures.java";
  records.push_back(helper);
  const CorpusIndex index(records);
  EXPECT_TRUE(index.is_production_class("r", "p.A"));
  EXPECT_FALSE(index.is_production_class("r", "p.ATest"));
  EXPECT_FALSE(index.is_production_class("r", "p.Fixtures"));
  EXPECT_FALSE(index.is_production_class("other", "p.A"));
}

TEST(CorpusIndexTest, SimpleNamePrefersSamePackageWhenAmbiguous) {
  MethodRecord a = method("Util", "f");
  MethodRecord b = method("Util", "f");
  b.package_name = "q";
  b.path = "src/main/java/q/Util.java";
  std::vector<MethodRecord> records = {a, b};
  const CorpusIndex index(records);
  EXPECT_EQ(index.resolve_production_class("r", "Util", "q"), "q.Util");
  EXPECT_FALSE(index.resolve_production_class("r", "Util", "z").has_value());
  EXPECT_FALSE(index.resolve_production_class("r", "Nope", "q").has_value());
}

TEST(CorpusIndexTest, ReposAreSeparate) {
  MethodRecord a = method("A", "f");
  MethodRecord t = test_method("ATest", "testF", {{"f", 0, "A"}});
  t.repo_id = "other";
  std::vector<MethodRecord> records = {a, t};
  const CorpusIndex index(records);
  EXPECT_FALSE(map_test_to_focal(records[1], index).has_value());
}

// The hand-built fixture corpus and its ground truth.
TEST(FixtureCorpusTest, MatchesGroundTruth) {
  const auto mined =
      mine_corpus(std::filesystem::path(ASSERTKIT_FIXTURES) / "trace_corpus", ScanOptions{});
  const CorpusIndex index(mined.records);
  const TraceResult trace = trace_corpus(mined.records, index);

  const std::map<std::string, std::pair<std::string, std::string>> expected = {
      {"testGetTrueWindDirection", {"getTrueWindDirection", "NC"}},
      {"testToKnots", {"toKnots", "NC"}},
      {"testReverse", {"reverse", "NC"}},
      {"testIdentifyOSXVersion", {"identifyOSXVersion", "NC"}},
      {"testGetMajor", {"getMajor", "NC"}},
      {"testCount", {"count", "NC"}},
      {"readsApparentWindAngle", {"getApparentWindAngle", "SCG"}},
      {"blankInputIsDetected", {"isBlank", "SCG"}},
      {"comparesNewerVersion", {"compareTo", "SCG"}},
  };
  EXPECT_EQ(trace.summary.tests, 10u);
  EXPECT_EQ(trace.summary.naming_convention, 6u);
  EXPECT_EQ(trace.summary.static_call_graph, 3u);
  EXPECT_EQ(trace.summary.unmapped, 1u);
  ASSERT_EQ(trace.pairs.size(), expected.size());
  for (const TestFocalPair& p : trace.pairs) {
    auto it = expected.find(p.test->name);
    ASSERT_NE(it, expected.end()) << p.test->name;
    EXPECT_EQ(p.focal->name, it->second.first);
    EXPECT_EQ(to_string(p.provenance), it->second.second) << p.test->name;
  }
}

}  // namespace
}  // namespace assertkit
