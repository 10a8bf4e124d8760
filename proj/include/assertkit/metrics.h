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

// Scoring of predicted assert statements. All inputs are word tokens
// (single-space split); matching is case-sensitive.
//
//   BLEU-4   corpus level, no smoothing, any empty n-gram order gives 0.
//   ROUGE-L  LCS F-measure with beta = 1, averaged over pairs.
//   edit     token Damerau-Levenshtein, optimal string alignment variant.

#ifndef ASSERTKIT_METRICS_H_
#define ASSERTKIT_METRICS_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "assertkit/caps_builder.h"
#include "assertkit/records.h"

namespace assertkit {

class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Splits on runs of spaces, tabs and newlines.
TokenList split_tokens(std::string_view text);

bool exact_match(std::span<const std::string> pred,
                 std::span<const std::string> ref);

// Throws MetricError for an empty corpus or mismatched list lengths.
double bleu4(std::span<const TokenList> predictions,
             std::span<const TokenList> references);

// Single pair F-measure x100. Throws MetricError if either side is empty.
double rouge_l(std::span<const std::string> pred,
               std::span<const std::string> ref);
double rouge_l_corpus(std::span<const TokenList> predictions,
                      std::span<const TokenList> references);

std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b);

// Insert, delete, substitute and adjacent transpose each cost 1; a
// transposed pair is not edited again.
std::size_t token_edit_distance(std::span<const std::string> pred,
                                std::span<const std::string> ref);

struct PredictionRecord {
  std::string instance_id;
  TokenList predicted;
  TokenList reference;
  AssertType assert_type = AssertType::kEquals;
  bool exact_match = false;
  std::size_t edit_distance = 0;
};

// Fills exact_match and edit_distance.
PredictionRecord score_prediction(std::string instance_id, TokenList predicted,
                                  TokenList reference, AssertType type);

struct HistogramBucket {
  std::string label;  // "1", "2", "3", ">=4"
  std::size_t count = 0;
  double fraction = 0;  // of incorrect records; 0 when none are incorrect
};

std::vector<HistogramBucket> edit_distance_histogram(
    std::span<const PredictionRecord> records);

struct LengthStats {
  std::optional<double> mean_short;  // correct predictions with < 15 tokens
  std::optional<double> mean_long;
  std::optional<double> median;
  std::size_t short_count = 0;
  std::size_t long_count = 0;
};

inline constexpr std::size_t kShortAssertLength = 15;

// Considers correct records only; lengths are reference token counts.
LengthStats length_stats(std::span<const PredictionRecord> records);

struct TypeAccuracy {
  std::size_t correct = 0;
  std::size_t total = 0;
  double fraction() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
};

// Keyed by display bucket ("Equals", ..., "Other"), present types only.
std::map<std::string, TypeAccuracy> per_type_accuracy(
    std::span<const PredictionRecord> records);

struct MetricsReport {
  std::size_t records = 0;
  std::size_t correct = 0;
  double accuracy = 0;
  double bleu4 = 0;
  double rouge_l = 0;
  std::map<std::string, TypeAccuracy> per_type;
  std::vector<HistogramBucket> edit_histogram;
  LengthStats length;
};

// Throws MetricError on an empty record set or an empty prediction.
MetricsReport evaluate(std::span<const PredictionRecord> records);

// `records` are echoed per id so reports can be compared later.
Json to_json(const MetricsReport& report,
             std::span<const PredictionRecord> records);
std::string render_report(const MetricsReport& report);

// Fixed two-decimal formatting used by every text table.
std::string format_fixed(double value, int decimals = 2);

}  // namespace assertkit

#endif  // ASSERTKIT_METRICS_H_
