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

#include <algorithm>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "assertkit/corpus_miner.h"
#include "assertkit/pipeline.h"

namespace assertkit {

namespace {

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

// CLI11 checks a subcommand's required options before the parent reads its
// config file, so --config is moved ahead of the subcommand name.
std::vector<std::string> hoist_config(int argc, const char* const* argv) {
  std::vector<std::string> front;
  std::vector<std::string> rest;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--") {
      for (; i < argc; ++i) rest.emplace_back(argv[i]);
      break;
    }
    if (arg == "--config" && i + 1 < argc) {
      front.push_back(arg);
      front.emplace_back(argv[++i]);
    } else if (arg.rfind("--config=", 0) == 0) {
      front.push_back(arg);
    } else {
      rest.push_back(arg);
    }
  }
  front.insert(front.end(), rest.begin(), rest.end());
  return front;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build assert-generation datasets from Java trees and score predictions."};
  app.name("assertkit");
  app.set_version_flag("--version", std::string(tool_version()));
  app.set_config("--config", "", "INI file; [mine], [build], ... sections hold options");
  app.require_subcommand(1);
  app.allow_config_extras(CLI::config_extras_mode::error);

  MineConfig mine;
  CLI::App* mine_cmd = app.add_subcommand("mine", "Extract method records from a corpus");
  mine_cmd->add_option("--root", mine.root, "Corpus root; each top-level directory is a repo")
      ->required();
  mine_cmd->add_option("--out", mine.out, "Output directory")->required();
  mine_cmd->add_option("--include", mine.include, "Glob over repo/path (repeatable)");
  mine_cmd->add_option("--exclude", mine.exclude, "Glob over repo/path (repeatable)");
  mine_cmd->add_option("--jobs", mine.jobs, "Worker threads, 0 = all cores")
      ->capture_default_str();

  BuildConfig build;
  std::string ratios = "8,1,1";
  bool no_summarization = false;
  CLI::App* build_cmd = app.add_subcommand("build", "Trace tests and write CAPS splits");
  build_cmd->add_option("--records", build.records, "methods.jsonl from mine")->required();
  build_cmd->add_option("--out", build.out, "Output directory")->required();
  build_cmd->add_option("--ratios", ratios, "train,valid,test weights")->capture_default_str();
  build_cmd->add_option("--seed", build.seed, "Repository shuffle seed")->capture_default_str();
  build_cmd->add_option("--token-budget", build.token_budget, "Source length budget")
      ->capture_default_str();
  build_cmd->add_flag("--no-summarization", no_summarization,
                      "Leave the summarization segment out of sources");

  EvalConfig eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Score predictions against a split");
  eval_cmd->add_option("--predictions", eval.predictions, "JSON Lines {id, pred}")->required();
  eval_cmd->add_option("--split", eval.split, "CAPS split file")->required();
  eval_cmd->add_option("--out", eval.out, "Output directory")->required();

  CompareConfig compare;
  std::string compare_split;
  CLI::App* compare_cmd = app.add_subcommand("compare", "McNemar comparison of two runs");
  compare_cmd->add_option("--run1", compare.run1, "report.json or predictions.jsonl")
      ->required();
  compare_cmd->add_option("--run2", compare.run2, "report.json or predictions.jsonl")
      ->required();
  compare_cmd->add_option("--split", compare_split, "Split for raw predictions");
  compare_cmd->add_option("--out", compare.out, "Output directory")->required();
  compare_cmd->add_option("--alpha", compare.alpha, "Significance level")
      ->capture_default_str();
  compare_cmd->add_option("--family-size", compare.family_size,
                          "Comparisons in the Bonferroni family")
      ->capture_default_str();
  compare_cmd->add_option("--label1", compare.label1, "Name of run 1")->capture_default_str();
  compare_cmd->add_option("--label2", compare.label2, "Name of run 2")->capture_default_str();

  StatsConfig stats;
  std::string stats_out;
  CLI::App* stats_cmd = app.add_subcommand("stats", "Length statistics of split files");
  stats_cmd->add_option("--split", stats.splits, "Split file (repeatable)")->required();
  stats_cmd->add_option("--out", stats_out, "Also write corpus_stats.json here");

  try {
    std::vector<std::string> args = hoist_config(argc, argv);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "assertkit: " << e.what() << "\n";
    return 2;
  }

  try {
    if (mine_cmd->parsed()) {
      mine.jobs = resolve_jobs(mine.jobs);
      out << cmd_mine(mine) << "\n";
    } else if (build_cmd->parsed()) {
      build.ratios = parse_ratios(ratios);
      build.with_summarization = !no_summarization;
      out << cmd_build(build) << "\n";
    } else if (eval_cmd->parsed()) {
      out << cmd_eval(eval) << "\n";
    } else if (compare_cmd->parsed()) {
      if (!compare_split.empty()) compare.split = compare_split;
      if (!(compare.alpha > 0 && compare.alpha < 1)) {
        throw ConfigError("--alpha must lie in (0, 1)");
      }
      if (compare.family_size == 0) throw ConfigError("--family-size must be at least 1");
      out << cmd_compare(compare) << "\n";
    } else if (stats_cmd->parsed()) {
      if (!stats_out.empty()) stats.out = stats_out;
      out << cmd_stats(stats);
    }
  } catch (const ConfigError& e) {
    err << "assertkit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "assertkit: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace assertkit
