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

#include "assertkit/pipeline.h"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "assertkit/corpus_miner.h"
#include "assertkit/traceability.h"

#ifndef ASSERTKIT_VERSION
#define ASSERTKIT_VERSION "0.0.0"
#endif

namespace assertkit {

namespace {

struct Digest {
  std::string name;
  std::string sha256;
};

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string dump_jsonl(const std::vector<Json>& rows) {
  std::string out;
  for (const Json& row : rows) {
    out += row.dump();
    out += '\n';
  }
  return out;
}

Digest input_digest(const fs::path& path) {
  return {path.filename().string(), file_sha256(path)};
}

// Writes `files` (name -> contents) into `out` and a manifest that lists
// their digests after the inputs.
void write_outputs(const fs::path& out, std::string_view command,
                   const Json& options, const std::vector<Digest>& inputs,
                   const std::vector<std::pair<std::string, std::string>>& files) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw std::runtime_error("cannot create " + out.string() + ": " + ec.message());
  Json manifest;
  manifest["tool"] = "assertkit";
  manifest["version"] = std::string(tool_version());
  manifest["command"] = std::string(command);
  manifest["options"] = options;
  manifest["config_sha256"] = sha256_hex(options.dump());
  Json in = Json::array();
  for (const Digest& d : inputs) in.push_back({{"name", d.name}, {"sha256", d.sha256}});
  manifest["inputs"] = in;
  Json produced = Json::array();
  for (const auto& [name, contents] : files) {
    write_text(out / name, contents);
    produced.push_back({{"name", name}, {"sha256", sha256_hex(contents)}});
  }
  manifest["outputs"] = produced;
  write_text(out / "manifest.json", dump_json(manifest));
}

std::vector<std::string> symmetric_difference(const std::set<std::string>& a,
                                              const std::set<std::string>& b) {
  std::vector<std::string> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

std::string preview(const std::vector<std::string>& ids) {
  std::string s;
  const std::size_t shown = std::min<std::size_t>(ids.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) s += (i ? " " : "") + ids[i];
  if (ids.size() > shown) s += " (+" + std::to_string(ids.size() - shown) + " more)";
  return s;
}

Json ratios_json(const SplitRatios& r) {
  return Json::array({r.train, r.valid, r.test});
}

Json split_summary(const std::vector<CapsInstance>& part) {
  std::set<std::string> repos;
  for (const CapsInstance& inst : part) repos.insert(inst.repo);
  return {{"instances", part.size()}, {"repos", repos.size()}};
}

std::string split_jsonl(const std::vector<CapsInstance>& part) {
  std::vector<Json> rows;
  rows.reserve(part.size());
  for (const CapsInstance& inst : part) rows.push_back(to_json(inst));
  return dump_jsonl(rows);
}

struct Run {
  Outcomes outcomes;
  std::string split_digest;
};

Run load_run(const fs::path& path, const std::optional<fs::path>& split) {
  const std::string text = read_text(path);
  Json whole = Json::parse(text, nullptr, false);
  Run run;
  if (!whole.is_discarded() && whole.is_object() && whole.contains("predictions")) {
    for (const Json& p : whole.at("predictions")) {
      run.outcomes[p.at("id").get<std::string>()] = p.at("exact_match").get<bool>();
    }
    run.split_digest = whole.value("split_sha256", "");
    return run;
  }
  if (!split) {
    throw ConfigError(path.string() + " is not a report; raw predictions need --split");
  }
  const auto records = join_predictions(read_jsonl(path), read_split(*split));
  for (const PredictionRecord& r : records) run.outcomes[r.instance_id] = r.exact_match;
  run.split_digest = file_sha256(*split);
  return run;
}

std::string length_cells(const LengthSummary& s) {
  auto cell = [](std::string v) {
    if (v.size() < 7) v.insert(0, 7 - v.size(), ' ');
    return v;
  };
  return cell(std::to_string(s.max)) + cell(std::to_string(s.min)) + cell(format_fixed(s.avg, 1));
}

}  // namespace

std::string_view tool_version() { return ASSERTKIT_VERSION; }

SplitRatios parse_ratios(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad split ratio '" + item + "'");
    }
  }
  if (parts.size() != 3) throw ConfigError("--ratios needs three values, e.g. 8,1,1");
  for (double p : parts) {
    if (!(p > 0)) throw ConfigError("split ratios must be positive");
  }
  return {parts[0], parts[1], parts[2]};
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

std::string file_sha256(const fs::path& path) { return sha256_hex(read_text(path)); }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<Json> read_jsonl(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<Json> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": invalid JSON");
    }
    rows.push_back(std::move(j));
  }
  return rows;
}

std::vector<CapsInstance> read_split(const fs::path& path) {
  std::vector<CapsInstance> out;
  for (const Json& row : read_jsonl(path)) out.push_back(caps_instance_from_json(row));
  return out;
}

std::vector<PredictionRecord> join_predictions(
    const std::vector<Json>& predictions, const std::vector<CapsInstance>& split) {
  std::map<std::string, std::string> by_id;
  for (const Json& p : predictions) {
    const std::string id = p.at("id").get<std::string>();
    if (!by_id.emplace(id, p.at("pred").get<std::string>()).second) {
      throw std::runtime_error("duplicate prediction id " + id);
    }
  }
  std::set<std::string> pred_ids;
  for (const auto& [id, pred] : by_id) pred_ids.insert(id);
  std::set<std::string> split_ids;
  for (const CapsInstance& inst : split) split_ids.insert(inst.id);
  const auto diff = symmetric_difference(pred_ids, split_ids);
  if (!diff.empty()) {
    throw std::runtime_error("prediction ids do not match the split; unmatched: " +
                             preview(diff));
  }
  std::vector<PredictionRecord> out;
  out.reserve(split.size());
  for (const CapsInstance& inst : split) {
    out.push_back(score_prediction(inst.id, split_tokens(by_id.at(inst.id)),
                                   inst.target, inst.assert_type));
  }
  return out;
}

std::string render_corpus_stats(
    const std::vector<std::pair<std::string, CorpusStats>>& rows) {
  std::ostringstream out;
  out << "                     Source               Summarization        Assert\n";
  out << "Split     #Inst   MaxL   MinL   AvgL   MaxL   MinL   AvgL   MaxL   MinL   AvgL\n";
  for (const auto& [name, s] : rows) {
    std::string label = name;
    if (label.size() < 10) label.append(10 - label.size(), ' ');
    std::string n = std::to_string(s.instances);
    if (n.size() < 5) n.insert(0, 5 - n.size(), ' ');
    out << label << n << length_cells(s.source) << length_cells(s.summarization)
        << length_cells(s.assert_statement) << "\n";
  }
  return out.str();
}

std::string cmd_mine(const MineConfig& config) {
  ScanOptions scan;
  scan.include = config.include;
  scan.exclude = config.exclude;
  const ScanResult files = scan_repositories(config.root, scan);
  MineResult mined = mine_files(files.files, config.jobs);
  mined.stats.skipped_unreadable += files.unreadable;
  mined.stats.files_scanned += files.unreadable;

  std::string corpus;
  for (const SourceFile& f : files.files) {
    corpus += f.repo_id + "/" + f.path + '\0' + sha256_hex(f.content) + '\n';
  }

  std::vector<Json> rows;
  rows.reserve(mined.records.size());
  for (const MethodRecord& r : mined.records) rows.push_back(to_json(r));
  Json stats = to_json(mined.stats);
  stats["diagnostics"] = mined.diagnostics;

  Json options = {{"include", config.include}, {"exclude", config.exclude}};
  write_outputs(config.out, "mine", options, {{"corpus", sha256_hex(corpus)}},
                {{"methods.jsonl", dump_jsonl(rows)}, {"mine_stats.json", dump_json(stats)}});
  return "mined " + std::to_string(mined.stats.methods) + " methods (" +
         std::to_string(mined.stats.test_methods) + " tests) from " +
         std::to_string(mined.stats.files_parsed) + " files";
}

std::string cmd_build(const BuildConfig& config) {
  std::vector<MethodRecord> records;
  for (const Json& row : read_jsonl(config.records)) {
    records.push_back(method_record_from_json(row));
  }
  const CorpusIndex index(records);
  const TraceResult trace = trace_corpus(records, index);

  BuildOptions options;
  options.with_summarization = config.with_summarization;
  options.token_budget = config.token_budget;
  const BuildReport built = build_instances(trace.pairs, options);
  if (built.instances.empty()) throw std::runtime_error("no CAPS instances were produced");
  const DatasetSplit split = split_dataset(built.instances, config.ratios, config.seed);

  std::vector<Json> pair_rows;
  for (const TestFocalPair& p : trace.pairs) pair_rows.push_back(to_json(p));

  Json stats;
  stats["with_summarization"] = config.with_summarization;
  stats["seed"] = config.seed;
  stats["ratios"] = ratios_json(config.ratios);
  stats["traceability"] = to_json(trace.summary);
  Json skipped = Json::object();
  for (const auto& [reason, n] : built.skipped) skipped[std::string(to_string(reason))] = n;
  stats["skipped"] = skipped;
  stats["dataset"] = to_json(corpus_stats(built.instances));
  stats["splits"] = {{"train", split_summary(split.train)},
                     {"valid", split_summary(split.valid)},
                     {"test", split_summary(split.test)}};
  stats["token_budget"] = config.token_budget;
  stats["over_budget_ids"] = built.over_budget_ids;
  stats["target_vocabulary_coverage"] = built.target_vocabulary_coverage;

  Json opts = {{"ratios", ratios_json(config.ratios)},
               {"seed", config.seed},
               {"token_budget", config.token_budget},
               {"with_summarization", config.with_summarization}};
  write_outputs(config.out, "build", opts, {input_digest(config.records)},
                {{"pairs.jsonl", dump_jsonl(pair_rows)},
                 {"trace_summary.json", dump_json(to_json(trace.summary))},
                 {"train.jsonl", split_jsonl(split.train)},
                 {"valid.jsonl", split_jsonl(split.valid)},
                 {"test.jsonl", split_jsonl(split.test)},
                 {"stats.json", dump_json(stats)}});
  return "built " + std::to_string(built.instances.size()) + " instances (train " +
         std::to_string(split.train.size()) + ", valid " +
         std::to_string(split.valid.size()) + ", test " +
         std::to_string(split.test.size()) + ")";
}

std::string cmd_eval(const EvalConfig& config) {
  const auto split = read_split(config.split);
  const auto records = join_predictions(read_jsonl(config.predictions), split);
  const MetricsReport report = evaluate(records);
  Json j = to_json(report, records);
  j["split_sha256"] = file_sha256(config.split);
  write_outputs(config.out, "eval", Json::object(),
                {input_digest(config.predictions), input_digest(config.split)},
                {{"report.json", dump_json(j)}, {"report.txt", render_report(report)}});
  return "accuracy " + format_fixed(100.0 * report.accuracy) + "%, BLEU-4 " +
         format_fixed(report.bleu4) + ", ROUGE-L " + format_fixed(report.rouge_l);
}

std::string cmd_compare(const CompareConfig& config) {
  const Run run1 = load_run(config.run1, config.split);
  const Run run2 = load_run(config.run2, config.split);
  if (!run1.split_digest.empty() && !run2.split_digest.empty() &&
      run1.split_digest != run2.split_digest) {
    throw std::runtime_error("runs were scored against different splits");
  }
  const ComparisonResult result = compare_runs(run1.outcomes, run2.outcomes, config.alpha,
                                               config.family_size, config.label1,
                                               config.label2);
  std::vector<Digest> inputs = {input_digest(config.run1), input_digest(config.run2)};
  if (config.split) inputs.push_back(input_digest(*config.split));
  Json opts = {{"alpha", config.alpha},
               {"family_size", config.family_size},
               {"label1", config.label1},
               {"label2", config.label2}};
  write_outputs(config.out, "compare", opts, inputs,
                {{"comparison.json", dump_json(to_json(result))},
                 {"comparison.txt", render_comparison(result)}});
  return "p = " + format_fixed(result.test.p_value, 4) + " (" +
         std::string(to_string(result.test.method)) + "), " +
         (result.significant ? "significant" : "not significant");
}

std::string cmd_stats(const StatsConfig& config) {
  if (config.splits.empty()) throw ConfigError("stats needs at least one --split");
  std::vector<std::pair<std::string, CorpusStats>> rows;
  std::vector<CapsInstance> all;
  std::vector<Digest> inputs;
  Json j = Json::object();
  for (const fs::path& path : config.splits) {
    auto part = read_split(path);
    rows.emplace_back(path.stem().string(), corpus_stats(part));
    j[path.stem().string()] = to_json(rows.back().second);
    all.insert(all.end(), part.begin(), part.end());
    inputs.push_back(input_digest(path));
  }
  if (config.splits.size() > 1) {
    rows.emplace_back("all", corpus_stats(all));
    j["all"] = to_json(rows.back().second);
  }
  const std::string table = render_corpus_stats(rows);
  if (config.out) {
    write_outputs(*config.out, "stats", Json::object(), inputs,
                  {{"corpus_stats.json", dump_json(j)}, {"corpus_stats.txt", table}});
  }
  return table;
}

}  // namespace assertkit
