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

// End-to-end commands behind the assertkit tool. Every command writes its
// artifacts plus a manifest.json into an output directory. Manifests record
// option values, input file names and SHA-256 digests but no paths or
// timestamps, so identical inputs give byte-identical output directories.

#ifndef ASSERTKIT_PIPELINE_H_
#define ASSERTKIT_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "assertkit/caps_builder.h"
#include "assertkit/metrics.h"
#include "assertkit/records.h"
#include "assertkit/stats.h"

namespace assertkit {

std::string_view tool_version();

// Bad option values; the tool exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "8,1,1" style train,valid,test weights. Throws ConfigError.
SplitRatios parse_ratios(const std::string& text);

std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);
// One JSON value per non-blank line; errors name the line number.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

namespace fs = std::filesystem;

struct MineConfig {
  fs::path root;
  fs::path out;
  std::vector<std::string> include = {"*.java"};
  std::vector<std::string> exclude;
  unsigned jobs = 1;
};

struct BuildConfig {
  fs::path records;  // methods.jsonl from mine
  fs::path out;
  SplitRatios ratios;
  std::uint64_t seed = 42;
  std::size_t token_budget = 512;
  bool with_summarization = true;
};

struct EvalConfig {
  fs::path predictions;  // JSON Lines {id, pred}
  fs::path split;        // CAPS split the predictions answer
  fs::path out;
};

struct CompareConfig {
  fs::path run1;  // report.json or predictions.jsonl
  fs::path run2;
  std::optional<fs::path> split;  // needed for raw predictions
  fs::path out;
  double alpha = kDefaultAlpha;
  std::size_t family_size = 1;
  std::string label1 = "run1";
  std::string label2 = "run2";
};

struct StatsConfig {
  std::vector<fs::path> splits;
  std::optional<fs::path> out;
};

// Each returns a one-line summary for the console.
std::string cmd_mine(const MineConfig& config);
std::string cmd_build(const BuildConfig& config);
std::string cmd_eval(const EvalConfig& config);
std::string cmd_compare(const CompareConfig& config);
// Returns the rendered table.
std::string cmd_stats(const StatsConfig& config);

std::vector<CapsInstance> read_split(const fs::path& path);

// Joins predictions against a split by id. Throws std::runtime_error listing
// unmatched ids when the two id sets differ.
std::vector<PredictionRecord> join_predictions(
    const std::vector<Json>& predictions, const std::vector<CapsInstance>& split);

// Table-1 shaped rendering of per-split corpus statistics.
std::string render_corpus_stats(
    const std::vector<std::pair<std::string, CorpusStats>>& rows);

// Parses arguments and runs one subcommand. Exit status: 0 ok, 1 runtime
// error, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace assertkit

#endif  // ASSERTKIT_PIPELINE_H_
