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

// Construction of code/assert/summarization training instances from
// test-focal pairs.
//
// Source layout (single-space joined):
//   <test prefix with <AssertPlaceHolder>> <FM> <focal method> <BOS>
//   <summarization> <EOS>

#ifndef ASSERTKIT_CAPS_BUILDER_H_
#define ASSERTKIT_CAPS_BUILDER_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "assertkit/records.h"
#include "assertkit/traceability.h"

namespace assertkit {

inline constexpr std::string_view kAssertPlaceholder = "<AssertPlaceHolder>";
inline constexpr std::string_view kFocalMarker = "<FM>";
inline constexpr std::string_view kSummaryBegin = "<BOS>";
inline constexpr std::string_view kSummaryEnd = "<EOS>";

enum class AssertType {
  kTrue,
  kFalse,
  kNull,
  kNotNull,
  kEquals,
  kSame,
  kArrayEquals,
  kThat,
  kNotEquals,
  kNotSame,
  kThrows,
  kFail,
};

inline constexpr std::array<AssertType, 12> kAllAssertTypes = {
    AssertType::kTrue,      AssertType::kFalse,   AssertType::kNull,
    AssertType::kNotNull,   AssertType::kEquals,  AssertType::kSame,
    AssertType::kArrayEquals, AssertType::kThat,  AssertType::kNotEquals,
    AssertType::kNotSame,   AssertType::kThrows,  AssertType::kFail};

std::string_view to_string(AssertType type);
std::optional<AssertType> assert_type_from_string(std::string_view name);
// NotEquals, NotSame, Throws and Fail are reported together as "Other".
bool is_other_bucket(AssertType type);
std::string_view display_bucket(AssertType type);

// The JUnit call name ("assertEquals", "fail", ...) for a type, and back.
std::optional<AssertType> assert_type_from_call(std::string_view call_name);

enum class SkipReason {
  kNoAssert,
  kMultiAssert,
  kUnknownAssertKind,
  kNoSummarization,
  kLexError,
  kDuplicate,
};

std::string_view to_string(SkipReason reason);

class SkipError : public std::runtime_error {
 public:
  SkipError(SkipReason reason, const std::string& detail);
  SkipReason reason() const { return reason_; }

 private:
  SkipReason reason_;
};

using TokenList = std::vector<std::string>;

// Lexes raw Java, strips comments and whitespace runs. Throws
// SkipError(kLexError) on malformed input.
TokenList normalize_code(std::string_view body);

// The serialized form joins tokens with single spaces, so a string literal
// holding spaces reads back as several pieces. word_tokens applies the same
// split to an in-memory list; build stores instances in this form.
TokenList split_spaces(std::string_view text);
TokenList word_tokens(std::span<const std::string> tokens);

// Ignores any leading qualifier chain ("org . junit . Assert ."). Throws
// SkipError(kUnknownAssertKind) for calls that are not recognized asserts.
AssertType classify_assert(std::span<const std::string> assert_tokens);

struct MaskedTest {
  TokenList prefix;          // test tokens with the assert replaced
  TokenList assert_tokens;   // the removed statement, through its ';'
  AssertType type;
  std::size_t placeholder_index = 0;
};

// Start/end (exclusive) of every statement-level assert call in `tokens`.
std::vector<std::pair<std::size_t, std::size_t>> find_assert_statements(
    std::span<const std::string> tokens);

// Throws SkipError(kNoAssert) or SkipError(kMultiAssert).
MaskedTest extract_assert(std::span<const std::string> test_tokens);

// Inverse of extract_assert: splices the assert back over the placeholder.
TokenList restore_assert(std::span<const std::string> prefix,
                         std::span<const std::string> assert_tokens);

// With `with_summarization` false the <BOS> ... <EOS> segment is omitted.
TokenList consolidate(std::span<const std::string> prefix,
                      std::span<const std::string> focal_tokens,
                      std::span<const std::string> summarization,
                      bool with_summarization = true);

// Drops the <BOS> ... <EOS> segment from a consolidated source.
TokenList strip_summarization(std::span<const std::string> source);
// Tokens strictly between <BOS> and <EOS>; empty if absent.
TokenList summarization_segment(std::span<const std::string> source);

struct CapsInstance {
  std::string id;
  std::string repo;
  TokenList source;
  TokenList target;
  AssertType assert_type = AssertType::kEquals;
};

Json to_json(const CapsInstance& instance);
CapsInstance caps_instance_from_json(const Json& j);

// Keeps the first occurrence of every (source, target) pair.
std::vector<CapsInstance> deduplicate(std::vector<CapsInstance> instances);

struct SplitRatios {
  double train = 8;
  double valid = 1;
  double test = 1;
};

struct DatasetSplit {
  std::vector<CapsInstance> train;
  std::vector<CapsInstance> valid;
  std::vector<CapsInstance> test;
  std::uint64_t seed = 0;
};

// Shuffles repositories with `seed` and assigns whole repositories to the
// split furthest below its instance-count target. Every split receives at
// least one repository. Throws std::invalid_argument with fewer than three
// repositories or non-positive ratios.
DatasetSplit split_dataset(std::span<const CapsInstance> instances,
                           const SplitRatios& ratios, std::uint64_t seed);

struct LengthSummary {
  std::size_t max = 0;
  std::size_t min = 0;
  double avg = 0;  // rounded to one decimal
};

struct CorpusStats {
  std::size_t instances = 0;
  LengthSummary source;
  LengthSummary summarization;
  LengthSummary assert_statement;
};

// Throws std::invalid_argument for an empty set.
CorpusStats corpus_stats(std::span<const CapsInstance> instances);
Json to_json(const CorpusStats& stats);

struct BuildOptions {
  bool with_summarization = true;
  std::size_t token_budget = 512;
};

struct BuildReport {
  std::vector<CapsInstance> instances;  // deduplicated, ids assigned
  std::map<SkipReason, std::size_t> skipped;
  std::vector<std::string> over_budget_ids;
  // Share of target tokens that also occur in the source.
  double target_vocabulary_coverage = 0;
};

BuildReport build_instances(std::span<const TestFocalPair> pairs,
                            const BuildOptions& options);

}  // namespace assertkit

#endif  // ASSERTKIT_CAPS_BUILDER_H_
