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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include "assertkit/metrics.h"

namespace assertkit {

namespace {

void check_same_ids(const Outcomes& run1, const Outcomes& run2) {
  std::vector<std::string> only1;
  std::vector<std::string> only2;
  for (const auto& [id, ok] : run1) {
    if (!run2.contains(id)) only1.push_back(id);
  }
  for (const auto& [id, ok] : run2) {
    if (!run1.contains(id)) only2.push_back(id);
  }
  if (only1.empty() && only2.empty()) return;
  std::ostringstream msg;
  msg << "instance id sets differ;";
  auto list = [&](const char* name, const std::vector<std::string>& ids) {
    if (ids.empty()) return;
    msg << " only in " << name << ":";
    const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) msg << ' ' << ids[i];
    if (ids.size() > shown) msg << " (+" << ids.size() - shown << " more)";
    msg << ';';
  };
  list("run1", only1);
  list("run2", only2);
  throw StatsError(msg.str());
}

std::string ratio_text(const OddsRatio& odds) {
  if (!odds.value) return "none";
  return format_fixed(*odds.value) + (odds.corrected ? "*" : "");
}

}  // namespace

ContingencyTable contingency(const Outcomes& run1, const Outcomes& run2) {
  check_same_ids(run1, run2);
  ContingencyTable t;
  for (const auto& [id, ok1] : run1) {
    const bool ok2 = run2.at(id);
    if (ok1 && ok2) ++t.a;
    else if (ok1) ++t.b;
    else if (ok2) ++t.c;
    else ++t.d;
  }
  return t;
}

std::string_view to_string(McNemarMethod method) {
  return method == McNemarMethod::kExactBinomial ? "exact-binomial"
                                                 : "chi-square-corrected";
}

double exact_binomial_two_sided(std::size_t k, std::size_t n) {
  if (n == 0) return 1.0;
  const std::size_t tail = std::min(k, n - k);
  double sum = 0;
  if (n <= 60) {
    // Exact in 64-bit integers: C(n, i) is built up by the multiplicative rule.
    std::uint64_t binom = 1;
    for (std::size_t i = 0; i <= tail; ++i) {
      if (i > 0) binom = binom * (n - i + 1) / i;
      sum += static_cast<double>(binom);
    }
    return std::min(1.0, 2.0 * sum / std::ldexp(1.0, static_cast<int>(n)));
  }
  // log-space terms keep the sum finite for large n.
  for (std::size_t i = 0; i <= tail; ++i) {
    const double log_c = std::lgamma(static_cast<double>(n) + 1) -
                         std::lgamma(static_cast<double>(i) + 1) -
                         std::lgamma(static_cast<double>(n - i) + 1);
    sum += std::exp(log_c - static_cast<double>(n) * std::log(2.0));
  }
  return std::min(1.0, 2.0 * sum);
}

double chi_square_1df_sf(double statistic) {
  if (statistic <= 0) return 1.0;
  return std::erfc(std::sqrt(statistic / 2.0));
}

McNemarResult mcnemar(const ContingencyTable& table) {
  McNemarResult r;
  const std::size_t n = table.b + table.c;
  if (n < kExactThreshold) {
    r.method = McNemarMethod::kExactBinomial;
    r.p_value = exact_binomial_two_sided(table.b, n);
    return r;
  }
  r.method = McNemarMethod::kChiSquareCorrected;
  const double diff =
      std::abs(static_cast<double>(table.b) - static_cast<double>(table.c)) - 1.0;
  const double stat = std::max(0.0, diff) * std::max(0.0, diff) / static_cast<double>(n);
  r.statistic = stat;
  r.p_value = std::min(1.0, chi_square_1df_sf(stat));
  return r;
}

OddsRatio odds_ratio(const ContingencyTable& table) {
  OddsRatio r;
  if (table.b == 0 && table.c == 0) return r;
  const double b = static_cast<double>(table.b);
  const double c = static_cast<double>(table.c);
  if (table.b == 0 || table.c == 0) {
    r.corrected = true;
    r.value = (b + 0.5) / (c + 0.5);
  } else {
    r.value = b / c;
  }
  return r;
}

Overlap overlap(const Outcomes& run1, const Outcomes& run2) {
  check_same_ids(run1, run2);
  Overlap o;
  for (const auto& [id, ok1] : run1) {
    const bool ok2 = run2.at(id);
    if (ok1 && ok2) ++o.shared_correct;
    else if (ok1) ++o.unique_to_1;
    else if (ok2) ++o.unique_to_2;
  }
  return o;
}

double bonferroni(double p_value, std::size_t family_size) {
  if (family_size == 0) throw StatsError("family size must be at least 1");
  return std::min(1.0, p_value * static_cast<double>(family_size));
}

ComparisonResult compare_runs(const Outcomes& run1, const Outcomes& run2,
                              double alpha, std::size_t family_size,
                              std::string label1, std::string label2) {
  if (!(alpha > 0 && alpha < 1)) throw StatsError("alpha must lie in (0, 1)");
  ComparisonResult r;
  r.label1 = std::move(label1);
  r.label2 = std::move(label2);
  r.table = contingency(run1, run2);
  r.test = mcnemar(r.table);
  r.family_size = family_size;
  r.adjusted_p = bonferroni(r.test.p_value, family_size);
  r.odds = odds_ratio(r.table);
  r.overlap = overlap(run1, run2);
  r.alpha = alpha;
  r.significant = r.test.p_value < alpha;
  return r;
}

Json to_json(const ComparisonResult& r) {
  Json j;
  j["run1"] = r.label1;
  j["run2"] = r.label2;
  j["table"] = {{"a", r.table.a}, {"b", r.table.b}, {"c", r.table.c},
                {"d", r.table.d}, {"total", r.table.total()}};
  j["method"] = std::string(to_string(r.test.method));
  j["exact_threshold"] = kExactThreshold;
  j["statistic"] = r.test.statistic ? Json(*r.test.statistic) : Json(nullptr);
  j["p_value"] = r.test.p_value;
  j["adjustment"] = "bonferroni";
  j["family_size"] = r.family_size;
  j["p_value_adjusted"] = r.adjusted_p;
  j["odds_ratio"] = r.odds.value ? Json(*r.odds.value) : Json(nullptr);
  j["odds_ratio_corrected"] = r.odds.corrected;
  j["alpha"] = r.alpha;
  j["significant"] = r.significant;
  j["significant_adjusted"] = r.adjusted_p < r.alpha;
  j["overlap"] = {{"shared_correct", r.overlap.shared_correct},
                  {"unique_to_run1", r.overlap.unique_to_1},
                  {"unique_to_run2", r.overlap.unique_to_2}};
  return j;
}

std::string render_comparison(const ComparisonResult& r) {
  std::ostringstream out;
  out << "# McNemar: " << to_string(r.test.method) << " (exact when b+c < "
      << kExactThreshold << "), alpha = " << format_fixed(r.alpha)
      << ", Bonferroni family size " << r.family_size << ".\n";
  if (r.odds.corrected) out << "# * odds ratio uses +0.5 on the zero cell.\n";
  out << "\nTreatment 1  Treatment 2  p-value  adj. p-value  OR\n";
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  out << pad(r.label1, 13) << pad(r.label2, 13)
      << pad(format_fixed(r.test.p_value, 4), 9)
      << pad(format_fixed(r.adjusted_p, 4), 14) << ratio_text(r.odds) << "\n\n";
  out << "Contingency  a=" << r.table.a << " b=" << r.table.b << " c=" << r.table.c
      << " d=" << r.table.d << "\n";
  out << "Overlap      shared=" << r.overlap.shared_correct
      << " unique_run1=" << r.overlap.unique_to_1
      << " unique_run2=" << r.overlap.unique_to_2 << "\n";
  return out.str();
}

}  // namespace assertkit
