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
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <unordered_set>

#include "assertkit/corpus_miner.h"
#include "assertkit/java_lexer.h"

namespace assertkit {

namespace {

struct AssertName {
  std::string_view call;
  std::string_view label;
  AssertType type;
};

constexpr std::array<AssertName, 12> kAssertNames = {{
    {"assertTrue", "True", AssertType::kTrue},
    {"assertFalse", "False", AssertType::kFalse},
    {"assertNull", "Null", AssertType::kNull},
    {"assertNotNull", "NotNull", AssertType::kNotNull},
    {"assertEquals", "Equals", AssertType::kEquals},
    {"assertSame", "Same", AssertType::kSame},
    {"assertArrayEquals", "ArrayEquals", AssertType::kArrayEquals},
    {"assertThat", "That", AssertType::kThat},
    {"assertNotEquals", "NotEquals", AssertType::kNotEquals},
    {"assertNotSame", "NotSame", AssertType::kNotSame},
    {"assertThrows", "Throws", AssertType::kThrows},
    {"fail", "Fail", AssertType::kFail},
}};

const AssertName& entry(AssertType type) {
  return kAssertNames[static_cast<std::size_t>(type)];
}

// Index just past the qualifier chain "a . b . c ." starting at `i`.
std::size_t skip_qualifiers(std::span<const std::string> toks, std::size_t i) {
  while (i + 1 < toks.size() && java::is_identifier_token(toks[i]) &&
         toks[i + 1] == ".") {
    i += 2;
  }
  return i;
}

bool statement_boundary(const std::string& prev) {
  return prev == "{" || prev == ";" || prev == "}" || prev == ")" ||
         prev == "else" || prev == ":";
}

std::size_t find_statement_end(std::span<const std::string> toks, std::size_t i) {
  int depth = 0;
  for (; i < toks.size(); ++i) {
    const std::string& t = toks[i];
    if (t == "(" || t == "[" || t == "{") ++depth;
    if (t == ")" || t == "]" || t == "}") --depth;
    if (depth < 0) return std::string::npos;
    if (depth == 0 && t == ";") return i;
  }
  return std::string::npos;
}

std::string pair_key(const CapsInstance& inst) {
  return java::join_tokens(inst.source) + '\x1f' + java::join_tokens(inst.target);
}

LengthSummary summarize(const std::vector<std::size_t>& lengths) {
  LengthSummary s;
  s.max = *std::max_element(lengths.begin(), lengths.end());
  s.min = *std::min_element(lengths.begin(), lengths.end());
  double total = 0;
  for (std::size_t n : lengths) total += static_cast<double>(n);
  s.avg = std::round(total / static_cast<double>(lengths.size()) * 10.0) / 10.0;
  return s;
}

Json to_json(const LengthSummary& s) {
  Json j;
  j["MaxL"] = s.max;
  j["MinL"] = s.min;
  j["AvgL"] = s.avg;
  return j;
}

// Uniform draw in [0, n) that only depends on the mt19937_64 output
// sequence, which the standard fixes; std::uniform_int_distribution does not.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

}  // namespace

TokenList split_spaces(std::string_view s) {
  TokenList out;
  std::size_t i = 0;
  while (i < s.size()) {
    std::size_t j = s.find(' ', i);
    if (j == std::string_view::npos) j = s.size();
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j + 1;
  }
  return out;
}

TokenList word_tokens(std::span<const std::string> tokens) {
  return split_spaces(java::join_tokens(tokens));
}

std::string_view to_string(AssertType type) { return entry(type).label; }

std::optional<AssertType> assert_type_from_string(std::string_view name) {
  for (const AssertName& n : kAssertNames) {
    if (n.label == name) return n.type;
  }
  return std::nullopt;
}

std::optional<AssertType> assert_type_from_call(std::string_view call_name) {
  for (const AssertName& n : kAssertNames) {
    if (n.call == call_name) return n.type;
  }
  return std::nullopt;
}

bool is_other_bucket(AssertType type) {
  return type == AssertType::kNotEquals || type == AssertType::kNotSame ||
         type == AssertType::kThrows || type == AssertType::kFail;
}

std::string_view display_bucket(AssertType type) {
  return is_other_bucket(type) ? "Other" : to_string(type);
}

std::string_view to_string(SkipReason reason) {
  switch (reason) {
    case SkipReason::kNoAssert: return "no-assert";
    case SkipReason::kMultiAssert: return "multi-assert";
    case SkipReason::kUnknownAssertKind: return "unknown-assert-kind";
    case SkipReason::kNoSummarization: return "no-summarization";
    case SkipReason::kLexError: return "lex-error";
    case SkipReason::kDuplicate: return "duplicate";
  }
  return "unknown";
}

SkipError::SkipError(SkipReason reason, const std::string& detail)
    : std::runtime_error(std::string(to_string(reason)) +
                         (detail.empty() ? "" : ": " + detail)),
      reason_(reason) {}

TokenList normalize_code(std::string_view body) {
  try {
    return java::normalize_code(body);
  } catch (const java::LexError& e) {
    throw SkipError(SkipReason::kLexError, e.what());
  }
}

AssertType classify_assert(std::span<const std::string> assert_tokens) {
  const std::size_t name = skip_qualifiers(assert_tokens, 0);
  if (name < assert_tokens.size()) {
    if (auto type = assert_type_from_call(assert_tokens[name])) return *type;
  }
  throw SkipError(SkipReason::kUnknownAssertKind,
                  name < assert_tokens.size() ? assert_tokens[name] : "");
}

std::vector<std::pair<std::size_t, std::size_t>> find_assert_statements(
    std::span<const std::string> tokens) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (i > 0 && statement_boundary(tokens[i - 1])) {
      const std::size_t name = skip_qualifiers(tokens, i);
      if (name + 1 < tokens.size() && tokens[name + 1] == "(" &&
          assert_type_from_call(tokens[name])) {
        const std::size_t end = find_statement_end(tokens, name);
        if (end != std::string::npos) {
          out.emplace_back(i, end + 1);
          i = end + 1;
          continue;
        }
      }
    }
    ++i;
  }
  return out;
}

MaskedTest extract_assert(std::span<const std::string> test_tokens) {
  const auto statements = find_assert_statements(test_tokens);
  if (statements.empty()) throw SkipError(SkipReason::kNoAssert, "");
  if (statements.size() > 1) {
    throw SkipError(SkipReason::kMultiAssert,
                    std::to_string(statements.size()) + " asserts");
  }
  const auto [begin, end] = statements.front();
  MaskedTest m;
  m.assert_tokens.assign(test_tokens.begin() + begin, test_tokens.begin() + end);
  m.type = classify_assert(m.assert_tokens);
  m.prefix.assign(test_tokens.begin(), test_tokens.begin() + begin);
  m.placeholder_index = m.prefix.size();
  m.prefix.emplace_back(kAssertPlaceholder);
  m.prefix.insert(m.prefix.end(), test_tokens.begin() + end, test_tokens.end());
  return m;
}

TokenList restore_assert(std::span<const std::string> prefix,
                         std::span<const std::string> assert_tokens) {
  TokenList out;
  for (const std::string& t : prefix) {
    if (t == kAssertPlaceholder) {
      out.insert(out.end(), assert_tokens.begin(), assert_tokens.end());
    } else {
      out.push_back(t);
    }
  }
  return out;
}

TokenList consolidate(std::span<const std::string> prefix,
                      std::span<const std::string> focal_tokens,
                      std::span<const std::string> summarization,
                      bool with_summarization) {
  TokenList out;
  out.reserve(prefix.size() + focal_tokens.size() + summarization.size() + 3);
  out.insert(out.end(), prefix.begin(), prefix.end());
  out.emplace_back(kFocalMarker);
  out.insert(out.end(), focal_tokens.begin(), focal_tokens.end());
  if (with_summarization) {
    out.emplace_back(kSummaryBegin);
    out.insert(out.end(), summarization.begin(), summarization.end());
    out.emplace_back(kSummaryEnd);
  }
  return out;
}

TokenList strip_summarization(std::span<const std::string> source) {
  TokenList out;
  bool inside = false;
  for (const std::string& t : source) {
    if (t == kSummaryBegin) {
      inside = true;
    } else if (t == kSummaryEnd && inside) {
      inside = false;
    } else if (!inside) {
      out.push_back(t);
    }
  }
  return out;
}

TokenList summarization_segment(std::span<const std::string> source) {
  auto begin = std::find(source.begin(), source.end(), kSummaryBegin);
  if (begin == source.end()) return {};
  auto end = std::find(begin + 1, source.end(), kSummaryEnd);
  return TokenList(begin + 1, end);
}

Json to_json(const CapsInstance& inst) {
  Json j;
  j["id"] = inst.id;
  j["repo"] = inst.repo;
  j["src"] = java::join_tokens(inst.source);
  j["tgt"] = java::join_tokens(inst.target);
  j["assert_type"] = std::string(to_string(inst.assert_type));
  return j;
}

CapsInstance caps_instance_from_json(const Json& j) {
  CapsInstance inst;
  inst.id = j.at("id").get<std::string>();
  inst.repo = j.at("repo").get<std::string>();
  inst.source = split_spaces(j.at("src").get<std::string>());
  inst.target = split_spaces(j.at("tgt").get<std::string>());
  const std::string type = j.at("assert_type").get<std::string>();
  auto parsed = assert_type_from_string(type);
  if (!parsed) throw SkipError(SkipReason::kUnknownAssertKind, type);
  inst.assert_type = *parsed;
  return inst;
}

std::vector<CapsInstance> deduplicate(std::vector<CapsInstance> instances) {
  std::unordered_set<std::string> seen;
  std::vector<CapsInstance> out;
  out.reserve(instances.size());
  for (CapsInstance& inst : instances) {
    if (seen.insert(pair_key(inst)).second) out.push_back(std::move(inst));
  }
  return out;
}

DatasetSplit split_dataset(std::span<const CapsInstance> instances,
                           const SplitRatios& ratios, std::uint64_t seed) {
  if (!(ratios.train > 0 && ratios.valid > 0 && ratios.test > 0)) {
    throw std::invalid_argument("split ratios must be positive");
  }
  std::map<std::string, std::size_t> repo_sizes;
  for (const CapsInstance& inst : instances) ++repo_sizes[inst.repo];
  if (repo_sizes.size() < 3) {
    throw std::invalid_argument("splitting needs at least 3 repositories, got " +
                                std::to_string(repo_sizes.size()));
  }

  std::vector<std::string> repos;
  for (const auto& [repo, n] : repo_sizes) repos.push_back(repo);
  std::mt19937_64 rng(seed);
  for (std::size_t i = repos.size() - 1; i > 0; --i) {
    std::swap(repos[i], repos[bounded(rng, i + 1)]);
  }

  const double sum = ratios.train + ratios.valid + ratios.test;
  const std::array<double, 3> share = {ratios.train / sum, ratios.valid / sum,
                                       ratios.test / sum};
  const double total = static_cast<double>(instances.size());
  std::array<std::size_t, 3> assigned_instances{};
  std::array<std::size_t, 3> assigned_repos{};
  std::map<std::string, int> split_of;

  for (std::size_t r = 0; r < repos.size(); ++r) {
    const std::size_t remaining = repos.size() - r;
    std::size_t empty = 0;
    for (std::size_t s = 0; s < 3; ++s) empty += assigned_repos[s] == 0;
    const bool only_empty = remaining <= empty;

    int best = -1;
    double best_deficit = 0;
    for (int s = 0; s < 3; ++s) {
      if (only_empty && assigned_repos[s] != 0) continue;
      const double deficit =
          share[s] * total - static_cast<double>(assigned_instances[s]);
      if (best < 0 || deficit > best_deficit) {
        best = s;
        best_deficit = deficit;
      }
    }
    split_of[repos[r]] = best;
    assigned_instances[best] += repo_sizes[repos[r]];
    ++assigned_repos[best];
  }

  DatasetSplit out;
  out.seed = seed;
  for (const CapsInstance& inst : instances) {
    switch (split_of[inst.repo]) {
      case 0: out.train.push_back(inst); break;
      case 1: out.valid.push_back(inst); break;
      default: out.test.push_back(inst); break;
    }
  }
  return out;
}

CorpusStats corpus_stats(std::span<const CapsInstance> instances) {
  if (instances.empty()) {
    throw std::invalid_argument("corpus statistics need at least one instance");
  }
  std::vector<std::size_t> source;
  std::vector<std::size_t> summary;
  std::vector<std::size_t> target;
  for (const CapsInstance& inst : instances) {
    source.push_back(inst.source.size());
    summary.push_back(summarization_segment(inst.source).size());
    target.push_back(inst.target.size());
  }
  CorpusStats s;
  s.instances = instances.size();
  s.source = summarize(source);
  s.summarization = summarize(summary);
  s.assert_statement = summarize(target);
  return s;
}

Json to_json(const CorpusStats& s) {
  Json j;
  j["instances"] = s.instances;
  j["source"] = to_json(s.source);
  j["summarization"] = to_json(s.summarization);
  j["assert"] = to_json(s.assert_statement);
  return j;
}

BuildReport build_instances(std::span<const TestFocalPair> pairs,
                            const BuildOptions& options) {
  BuildReport report;
  std::vector<CapsInstance> staged;
  for (const TestFocalPair& pair : pairs) {
    auto summary = extract_doc_comment(*pair.focal);
    if (!summary) {
      ++report.skipped[SkipReason::kNoSummarization];
      continue;
    }
    try {
      MaskedTest masked = extract_assert(pair.test->declaration_tokens());
      CapsInstance inst;
      inst.repo = pair.test->repo_id;
      inst.source = word_tokens(consolidate(masked.prefix,
                                            pair.focal->declaration_tokens(), *summary));
      inst.target = word_tokens(masked.assert_tokens);
      inst.assert_type = masked.type;
      staged.push_back(std::move(inst));
    } catch (const SkipError& e) {
      ++report.skipped[e.reason()];
    }
  }

  // Dedup always keys on the full source so both ablation variants keep the
  // same instance set and ids.
  const std::size_t before = staged.size();
  report.instances = deduplicate(std::move(staged));
  if (before > report.instances.size()) {
    report.skipped[SkipReason::kDuplicate] = before - report.instances.size();
  }

  std::size_t target_tokens = 0;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    CapsInstance& inst = report.instances[i];
    char id[32];
    std::snprintf(id, sizeof(id), "c%06zu", i + 1);
    inst.id = id;
    const std::set<std::string> vocab(inst.source.begin(), inst.source.end());
    for (const std::string& t : inst.target) {
      ++target_tokens;
      covered += vocab.contains(t);
    }
    if (!options.with_summarization) inst.source = strip_summarization(inst.source);
    if (inst.source.size() > options.token_budget) report.over_budget_ids.push_back(inst.id);
  }
  report.target_vocabulary_coverage =
      target_tokens == 0 ? 0.0
                         : static_cast<double>(covered) / static_cast<double>(target_tokens);
  return report;
}

}  // namespace assertkit
