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

// Paired comparison of two prediction runs over the same instances.
//
// McNemar: exact two-sided binomial when b + c < 25, otherwise the
// continuity-corrected chi-square with one degree of freedom.

#ifndef ASSERTKIT_STATS_H_
#define ASSERTKIT_STATS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "assertkit/records.h"

namespace assertkit {

class StatsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Per-instance correctness of one run, keyed by instance id.
using Outcomes = std::map<std::string, bool>;

struct ContingencyTable {
  std::size_t a = 0;  // both correct
  std::size_t b = 0;  // only run 1 correct
  std::size_t c = 0;  // only run 2 correct
  std::size_t d = 0;  // neither
  std::size_t total() const { return a + b + c + d; }
};

// Throws StatsError naming the ids present in only one run.
ContingencyTable contingency(const Outcomes& run1, const Outcomes& run2);

enum class McNemarMethod { kExactBinomial, kChiSquareCorrected };

std::string_view to_string(McNemarMethod method);

inline constexpr std::size_t kExactThreshold = 25;

struct McNemarResult {
  double p_value = 1.0;
  McNemarMethod method = McNemarMethod::kExactBinomial;
  std::optional<double> statistic;  // chi-square branch only
};

McNemarResult mcnemar(const ContingencyTable& table);

// Two-sided exact binomial p for `k` successes out of `n` at 0.5.
double exact_binomial_two_sided(std::size_t k, std::size_t n);
// Upper tail of the chi-square distribution with one degree of freedom.
double chi_square_1df_sf(double statistic);

struct OddsRatio {
  std::optional<double> value;  // none when b = c = 0
  bool corrected = false;       // a zero cell got +0.5
};

OddsRatio odds_ratio(const ContingencyTable& table);

struct Overlap {
  std::size_t shared_correct = 0;
  std::size_t unique_to_1 = 0;
  std::size_t unique_to_2 = 0;
};

Overlap overlap(const Outcomes& run1, const Outcomes& run2);

// min(1, p * family_size). Throws StatsError for family_size 0.
double bonferroni(double p_value, std::size_t family_size);

inline constexpr double kDefaultAlpha = 0.05;

struct ComparisonResult {
  std::string label1;
  std::string label2;
  ContingencyTable table;
  McNemarResult test;
  double adjusted_p = 1.0;
  std::size_t family_size = 1;
  OddsRatio odds;
  Overlap overlap;
  double alpha = kDefaultAlpha;
  bool significant = false;  // raw p < alpha
};

ComparisonResult compare_runs(const Outcomes& run1, const Outcomes& run2,
                              double alpha = kDefaultAlpha,
                              std::size_t family_size = 1,
                              std::string label1 = "run1",
                              std::string label2 = "run2");

Json to_json(const ComparisonResult& result);
std::string render_comparison(const ComparisonResult& result);

}  // namespace assertkit

#endif  // ASSERTKIT_STATS_H_
