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

#include "assertkit/stats.h"

#include <cmath>
#include <random>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace assertkit {
namespace {

using ::testing::HasSubstr;

Outcomes outcomes(std::size_t n, const std::vector<std::size_t>& correct) {
  Outcomes o;
  for (std::size_t i = 0; i < n; ++i) o["i" + std::to_string(i)] = false;
  for (std::size_t i : correct) o["i" + std::to_string(i)] = true;
  return o;
}

TEST(ContingencyTest, HandExample) {
  // Run 1 correct on {1, 2}, run 2 on {2, 3}, four instances.
  const auto t = contingency(outcomes(4, {1, 2}), outcomes(4, {2, 3}));
  EXPECT_EQ(t.a, 1u);
  EXPECT_EQ(t.b, 1u);
  EXPECT_EQ(t.c, 1u);
  EXPECT_EQ(t.d, 1u);
  EXPECT_EQ(t.total(), 4u);
}

TEST(ContingencyTest, MismatchedIdsNameBothSides) {
  Outcomes r1 = outcomes(3, {0});
  Outcomes r2 = outcomes(3, {0});
  r1["only1"] = true;
  r2.erase("i2");
  try {
    contingency(r1, r2);
    FAIL() << "expected StatsError";
  } catch (const StatsError& e) {
    EXPECT_THAT(e.what(), HasSubstr("only1"));
    EXPECT_THAT(e.what(), HasSubstr("i2"));
  }
}

TEST(McNemarTest, ExactBranchMatchesEnumeration) {
  for (std::size_t n = 0; n < kExactThreshold; ++n) {
    const auto counts = oracle::enumerate_binomial_counts(n);
    for (std::size_t b = 0; b <= n; ++b) {
      ContingencyTable t{3, b, n - b, 2};
      const McNemarResult r = mcnemar(t);
      EXPECT_EQ(r.method, McNemarMethod::kExactBinomial);
      EXPECT_FALSE(r.statistic.has_value());
      EXPECT_NEAR(r.p_value, oracle::exact_mcnemar_oracle(b, n - b, counts), 1e-12)
          << "b=" << b << " c=" << n - b;
    }
  }
}

TEST(McNemarTest, ExactHandValue) {
  EXPECT_NEAR(exact_binomial_two_sided(2, 12), 2.0 * (1 + 12 + 66) / 4096.0, 1e-15);
  EXPECT_DOUBLE_EQ(exact_binomial_two_sided(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(exact_binomial_two_sided(3, 6), 1.0);
}

TEST(McNemarTest, ExactLargeNUsesLogSpace) {
  // Symmetric tail sums to 1 and tiny tails stay positive.
  EXPECT_NEAR(exact_binomial_two_sided(40, 80), 1.0, 1e-12);
  const double p = exact_binomial_two_sided(0, 100);
  EXPECT_GT(p, 0.0);
  EXPECT_NEAR(p, 2.0 * std::ldexp(1.0, -100), 1e-40);
}

TEST(McNemarTest, ChiSquareBranch) {
  const ContingencyTable t{100, 60, 30, 10};
  const McNemarResult r = mcnemar(t);
  EXPECT_EQ(r.method, McNemarMethod::kChiSquareCorrected);
  ASSERT_TRUE(r.statistic.has_value());
  EXPECT_NEAR(*r.statistic, 841.0 / 90.0, 1e-12);
  EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(841.0 / 180.0)), 1e-15);
  // Tabulated critical values for one degree of freedom.
  EXPECT_NEAR(chi_square_1df_sf(3.841), 0.05, 1e-4);
  EXPECT_NEAR(chi_square_1df_sf(6.635), 0.01, 1e-4);
  EXPECT_NEAR(chi_square_1df_sf(10.828), 0.001, 1e-5);
  EXPECT_LT(r.p_value, 0.01);
  EXPECT_GT(r.p_value, 0.001);
}

TEST(McNemarTest, BranchSwitchesAtThreshold) {
  EXPECT_EQ(mcnemar({0, 12, 12, 0}).method, McNemarMethod::kExactBinomial);
  EXPECT_EQ(mcnemar({0, 13, 12, 0}).method, McNemarMethod::kChiSquareCorrected);
  EXPECT_EQ(to_string(McNemarMethod::kExactBinomial), "exact-binomial");
  EXPECT_EQ(to_string(McNemarMethod::kChiSquareCorrected), "chi-square-corrected");
}

TEST(McNemarPropertyTest, PValueInRangeAndSymmetric) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> cell(0, 300);
  for (int i = 0; i < 2000; ++i) {
    ContingencyTable t{cell(rng), cell(rng) % (i % 3 == 0 ? 15 : 300), cell(rng), cell(rng)};
    const double p = mcnemar(t).p_value;
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    ContingencyTable swapped{t.a, t.c, t.b, t.d};
    EXPECT_NEAR(mcnemar(swapped).p_value, p, 1e-12);
  }
}

TEST(OddsRatioTest, ValuesAndCorrection) {
  EXPECT_DOUBLE_EQ(*odds_ratio({0, 6, 3, 0}).value, 2.0);
  EXPECT_FALSE(odds_ratio({0, 6, 3, 0}).corrected);
  const OddsRatio z = odds_ratio({5, 4, 0, 1});
  EXPECT_TRUE(z.corrected);
  EXPECT_DOUBLE_EQ(*z.value, 9.0);
  EXPECT_FALSE(odds_ratio({5, 0, 0, 5}).value.has_value());
}

TEST(OddsRatioPropertyTest, SwappingRunsInvertsOdds) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<std::size_t> cell(0, 40);
  for (int i = 0; i < 1000; ++i) {
    ContingencyTable t{cell(rng), cell(rng), cell(rng), cell(rng)};
    ContingencyTable s{t.a, t.c, t.b, t.d};
    const OddsRatio o = odds_ratio(t);
    const OddsRatio r = odds_ratio(s);
    ASSERT_EQ(o.value.has_value(), r.value.has_value());
    EXPECT_EQ(o.corrected, r.corrected);
    if (o.value) {
      EXPECT_NEAR(std::log(*o.value), -std::log(*r.value), 1e-12);
    }
  }
}

TEST(BonferroniTest, ScalesAndCaps) {
  EXPECT_DOUBLE_EQ(bonferroni(0.01, 3), 0.03);
  EXPECT_DOUBLE_EQ(bonferroni(0.4, 3), 1.0);
  EXPECT_THROW(bonferroni(0.1, 0), StatsError);
}

TEST(CompareRunsTest, SelfComparisonIsNull) {
  const Outcomes r = outcomes(30, {1, 4, 9, 16, 25});
  const ComparisonResult c = compare_runs(r, r);
  EXPECT_EQ(c.table.b, 0u);
  EXPECT_EQ(c.table.c, 0u);
  EXPECT_DOUBLE_EQ(c.test.p_value, 1.0);
  EXPECT_FALSE(c.odds.value.has_value());
  EXPECT_FALSE(c.significant);
  EXPECT_EQ(c.overlap.shared_correct, 5u);
}

TEST(CompareRunsTest, AlphaOnlyChangesLabel) {
  std::vector<std::size_t> better;
  for (std::size_t i = 0; i < 10; ++i) better.push_back(i);
  const Outcomes r1 = outcomes(20, better);
  const Outcomes r2 = outcomes(20, {0});
  const ComparisonResult loose = compare_runs(r1, r2, 0.05);
  const ComparisonResult strict = compare_runs(r1, r2, 0.001);
  EXPECT_DOUBLE_EQ(loose.test.p_value, strict.test.p_value);
  EXPECT_NEAR(loose.test.p_value, 2.0 / 512.0, 1e-15);
  EXPECT_TRUE(loose.significant);
  EXPECT_FALSE(strict.significant);
}

TEST(CompareRunsTest, FamilyAdjustmentAndValidation) {
  const Outcomes r1 = outcomes(20, {0, 1, 2, 3, 4, 5, 6});
  const Outcomes r2 = outcomes(20, {0});
  const ComparisonResult c = compare_runs(r1, r2, 0.05, 6, "A", "B");
  EXPECT_NEAR(c.test.p_value, 2.0 / 64.0, 1e-15);
  EXPECT_DOUBLE_EQ(c.adjusted_p, 1.0 * std::min(1.0, 6 * 2.0 / 64.0));
  EXPECT_TRUE(c.significant);
  const Json j = to_json(c);
  EXPECT_EQ(j["significant_adjusted"], false);
  EXPECT_EQ(j["adjustment"], "bonferroni");
  EXPECT_THAT(render_comparison(c), HasSubstr("adj. p-value"));
  EXPECT_THROW(compare_runs(r1, r2, 0.0), StatsError);
  EXPECT_THROW(compare_runs(r1, r2, 1.0), StatsError);
}

TEST(OverlapTest, Counts) {
  const Overlap o = overlap(outcomes(6, {0, 1, 2}), outcomes(6, {2, 3}));
  EXPECT_EQ(o.shared_correct, 1u);
  EXPECT_EQ(o.unique_to_1, 2u);
  EXPECT_EQ(o.unique_to_2, 1u);
}

}  // namespace
}  // namespace assertkit
