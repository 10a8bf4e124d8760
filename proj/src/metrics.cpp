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

#include "assertkit/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "assertkit/java_lexer.h"

namespace assertkit {

namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts count_ngrams(std::span<const std::string> toks, std::size_t n) {
  NgramCounts out;
  if (toks.size() < n) return out;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    std::vector<std::string_view> gram(toks.begin() + i, toks.begin() + i + n);
    ++out[std::move(gram)];
  }
  return out;
}

void check_aligned(std::span<const TokenList> predictions,
                   std::span<const TokenList> references) {
  if (predictions.empty()) throw MetricError("empty corpus");
  if (predictions.size() != references.size()) {
    throw MetricError("prediction/reference count mismatch: " +
                      std::to_string(predictions.size()) + " vs " +
                      std::to_string(references.size()));
  }
}

std::optional<double> mean(const std::vector<std::size_t>& v) {
  if (v.empty()) return std::nullopt;
  double total = 0;
  for (std::size_t x : v) total += static_cast<double>(x);
  return total / static_cast<double>(v.size());
}

Json optional_number(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string optional_fixed(const std::optional<double>& v) {
  return v ? format_fixed(*v) : "none";
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

TokenList split_tokens(std::string_view text) {
  TokenList out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' ||
                               text[i] == '\n' || text[i] == '\r')) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' &&
           text[j] != '\n' && text[j] != '\r') {
      ++j;
    }
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

bool exact_match(std::span<const std::string> pred,
                 std::span<const std::string> ref) {
  return std::equal(pred.begin(), pred.end(), ref.begin(), ref.end());
}

double bleu4(std::span<const TokenList> predictions,
             std::span<const TokenList> references) {
  check_aligned(predictions, references);
  double log_precision = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::size_t matched = 0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      const NgramCounts pred = count_ngrams(predictions[i], n);
      const NgramCounts ref = count_ngrams(references[i], n);
      for (const auto& [gram, count] : pred) {
        total += count;
        auto it = ref.find(gram);
        if (it != ref.end()) matched += std::min(count, it->second);
      }
    }
    if (matched == 0) return 0.0;
    log_precision += std::log(static_cast<double>(matched) / static_cast<double>(total));
  }
  std::size_t c = 0;
  std::size_t r = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    c += predictions[i].size();
    r += references[i].size();
  }
  const double bp =
      c > r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / static_cast<double>(c));
  return 100.0 * bp * std::exp(log_precision / 4.0);
}

std::size_t lcs_length(std::span<const std::string> a,
                       std::span<const std::string> b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = a[i - 1] == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

double rouge_l(std::span<const std::string> pred,
               std::span<const std::string> ref) {
  if (pred.empty() || ref.empty()) throw MetricError("ROUGE-L of an empty sequence");
  const double l = static_cast<double>(lcs_length(pred, ref));
  if (l == 0) return 0.0;
  const double p = l / static_cast<double>(pred.size());
  const double r = l / static_cast<double>(ref.size());
  return 100.0 * 2 * p * r / (p + r);
}

double rouge_l_corpus(std::span<const TokenList> predictions,
                      std::span<const TokenList> references) {
  check_aligned(predictions, references);
  double total = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    total += rouge_l(predictions[i], references[i]);
  }
  return total / static_cast<double>(predictions.size());
}

std::size_t token_edit_distance(std::span<const std::string> pred,
                                std::span<const std::string> ref) {
  const std::size_t m = pred.size();
  const std::size_t n = ref.size();
  // Three rolling rows: i-2, i-1, i.
  std::vector<std::size_t> prev2(n + 1), prev(n + 1), cur(n + 1);
  for (std::size_t j = 0; j <= n; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t cost = pred[i - 1] == ref[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && pred[i - 1] == ref[j - 2] && pred[i - 2] == ref[j - 1]) {
        cur[j] = std::min(cur[j], prev2[j - 2] + 1);
      }
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[n];
}

PredictionRecord score_prediction(std::string instance_id, TokenList predicted,
                                  TokenList reference, AssertType type) {
  PredictionRecord r;
  r.instance_id = std::move(instance_id);
  r.predicted = std::move(predicted);
  r.reference = std::move(reference);
  r.assert_type = type;
  r.exact_match = exact_match(r.predicted, r.reference);
  r.edit_distance = token_edit_distance(r.predicted, r.reference);
  return r;
}

std::vector<HistogramBucket> edit_distance_histogram(
    std::span<const PredictionRecord> records) {
  std::vector<HistogramBucket> buckets = {{"1"}, {"2"}, {"3"}, {">=4"}};
  std::size_t incorrect = 0;
  for (const PredictionRecord& r : records) {
    if (r.exact_match) continue;
    ++incorrect;
    ++buckets[std::clamp<std::size_t>(r.edit_distance, 1, 4) - 1].count;
  }
  for (HistogramBucket& b : buckets) {
    b.fraction = incorrect == 0 ? 0.0
                                : static_cast<double>(b.count) / static_cast<double>(incorrect);
  }
  return buckets;
}

LengthStats length_stats(std::span<const PredictionRecord> records) {
  std::vector<std::size_t> all;
  std::vector<std::size_t> short_lengths;
  std::vector<std::size_t> long_lengths;
  for (const PredictionRecord& r : records) {
    if (!r.exact_match) continue;
    const std::size_t n = r.reference.size();
    all.push_back(n);
    (n < kShortAssertLength ? short_lengths : long_lengths).push_back(n);
  }
  LengthStats s;
  s.mean_short = mean(short_lengths);
  s.mean_long = mean(long_lengths);
  s.short_count = short_lengths.size();
  s.long_count = long_lengths.size();
  if (!all.empty()) {
    std::sort(all.begin(), all.end());
    const std::size_t mid = all.size() / 2;
    s.median = all.size() % 2 == 1
                   ? static_cast<double>(all[mid])
                   : (static_cast<double>(all[mid - 1]) + static_cast<double>(all[mid])) / 2.0;
  }
  return s;
}

std::map<std::string, TypeAccuracy> per_type_accuracy(
    std::span<const PredictionRecord> records) {
  std::map<std::string, TypeAccuracy> out;
  for (const PredictionRecord& r : records) {
    TypeAccuracy& t = out[std::string(display_bucket(r.assert_type))];
    ++t.total;
    t.correct += r.exact_match;
  }
  return out;
}

MetricsReport evaluate(std::span<const PredictionRecord> records) {
  if (records.empty()) throw MetricError("no records to evaluate");
  std::vector<TokenList> preds;
  std::vector<TokenList> refs;
  MetricsReport report;
  for (const PredictionRecord& r : records) {
    if (r.predicted.empty()) throw MetricError("empty prediction for " + r.instance_id);
    preds.push_back(r.predicted);
    refs.push_back(r.reference);
    report.correct += r.exact_match;
  }
  report.records = records.size();
  report.accuracy = static_cast<double>(report.correct) / static_cast<double>(records.size());
  report.bleu4 = bleu4(preds, refs);
  report.rouge_l = rouge_l_corpus(preds, refs);
  report.per_type = per_type_accuracy(records);
  report.edit_histogram = edit_distance_histogram(records);
  report.length = length_stats(records);
  return report;
}

Json to_json(const MetricsReport& report,
             std::span<const PredictionRecord> records) {
  Json j;
  j["metric_options"] = {{"bleu", "corpus BLEU-4, unsmoothed, case-sensitive"},
                         {"rouge_l_beta", 1},
                         {"edit_distance", "token Damerau-Levenshtein (OSA)"},
                         {"short_threshold", kShortAssertLength}};
  j["records"] = report.records;
  j["correct"] = report.correct;
  j["accuracy"] = report.accuracy;
  j["bleu4"] = report.bleu4;
  j["rouge_l"] = report.rouge_l;
  Json types = Json::object();
  for (const auto& [name, t] : report.per_type) {
    types[name] = {{"correct", t.correct}, {"total", t.total}, {"accuracy", t.fraction()}};
  }
  j["per_type"] = types;
  Json hist = Json::array();
  for (const HistogramBucket& b : report.edit_histogram) {
    hist.push_back({{"distance", b.label}, {"count", b.count}, {"fraction", b.fraction}});
  }
  j["edit_histogram"] = hist;
  j["length_stats"] = {{"MeanS", optional_number(report.length.mean_short)},
                       {"MeanL", optional_number(report.length.mean_long)},
                       {"Median", optional_number(report.length.median)},
                       {"short", report.length.short_count},
                       {"long", report.length.long_count}};
  Json per_record = Json::array();
  for (const PredictionRecord& r : records) {
    per_record.push_back({{"id", r.instance_id},
                          {"assert_type", std::string(to_string(r.assert_type))},
                          {"exact_match", r.exact_match},
                          {"edit_distance", r.edit_distance}});
  }
  j["predictions"] = per_record;
  return j;
}

std::string render_report(const MetricsReport& report) {
  std::ostringstream out;
  out << "# BLEU-4: corpus level, unsmoothed, case-sensitive. ROUGE-L: beta = 1.\n\n";
  out << "Metric    Value\n";
  out << "Accuracy  " << format_fixed(100.0 * report.accuracy) << "%\n";
  out << "BLEU-4    " << format_fixed(report.bleu4) << "\n";
  out << "ROUGE-L   " << format_fixed(report.rouge_l) << "\n\n";

  out << "Assert type  Correct  Total  Accuracy\n";
  for (const auto& [name, t] : report.per_type) {
    out << pad(name, 13) << pad(std::to_string(t.correct), 9)
        << pad(std::to_string(t.total), 7) << format_fixed(100.0 * t.fraction()) << "%\n";
  }
  out << "\n";

  out << "MeanS  MeanL  Median\n";
  out << pad(optional_fixed(report.length.mean_short), 7)
      << pad(optional_fixed(report.length.mean_long), 7)
      << optional_fixed(report.length.median) << "\n\n";

  out << "Edit dist.  Count  Fraction\n";
  for (const HistogramBucket& b : report.edit_histogram) {
    out << pad(b.label, 12) << pad(std::to_string(b.count), 7)
        << format_fixed(100.0 * b.fraction) << "%\n";
  }
  return out.str();
}

}  // namespace assertkit
