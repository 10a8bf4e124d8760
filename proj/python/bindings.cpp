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

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "assertkit/metrics.h"
#include "assertkit/pipeline.h"
#include "assertkit/stats.h"

namespace py = pybind11;
using namespace assertkit;

namespace {

std::tuple<int, std::string, std::string> run_cli_py(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"assertkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// JSON text; the Python side turns it into a dict.
std::string mcnemar_json(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  const ContingencyTable t{a, b, c, d};
  const McNemarResult r = mcnemar(t);
  const OddsRatio o = odds_ratio(t);
  Json j = {{"p_value", r.p_value},
            {"method", std::string(to_string(r.method))},
            {"statistic", r.statistic ? Json(*r.statistic) : Json(nullptr)},
            {"odds_ratio", o.value ? Json(*o.value) : Json(nullptr)},
            {"odds_ratio_corrected", o.corrected}};
  return j.dump();
}

std::string compare_json(const Outcomes& run1, const Outcomes& run2, double alpha,
                         std::size_t family_size) {
  return to_json(compare_runs(run1, run2, alpha, family_size)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of assertkit";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("version", [] { return std::string(tool_version()); });
  m.def("run_cli", &run_cli_py, py::arg("args"),
        "Run the command line tool in-process; returns (exit code, stdout, stderr).");

  m.def(
      "mine",
      [](const fs::path& root, const fs::path& out, std::vector<std::string> include,
         std::vector<std::string> exclude, unsigned jobs) {
        MineConfig c;
        c.root = root;
        c.out = out;
        if (!include.empty()) c.include = std::move(include);
        c.exclude = std::move(exclude);
        c.jobs = jobs;
        py::gil_scoped_release release;
        return cmd_mine(c);
      },
      py::arg("root"), py::arg("out"), py::arg("include") = std::vector<std::string>{},
      py::arg("exclude") = std::vector<std::string>{}, py::arg("jobs") = 1u);

  m.def(
      "build",
      [](const fs::path& records, const fs::path& out, const std::string& ratios,
         std::uint64_t seed, std::size_t token_budget, bool with_summarization) {
        BuildConfig c;
        c.records = records;
        c.out = out;
        c.ratios = parse_ratios(ratios);
        c.seed = seed;
        c.token_budget = token_budget;
        c.with_summarization = with_summarization;
        py::gil_scoped_release release;
        return cmd_build(c);
      },
      py::arg("records"), py::arg("out"), py::arg("ratios") = "8,1,1", py::arg("seed") = 42,
      py::arg("token_budget") = 512, py::arg("with_summarization") = true);

  m.def(
      "evaluate",
      [](const fs::path& predictions, const fs::path& split, const fs::path& out) {
        py::gil_scoped_release release;
        return cmd_eval({predictions, split, out});
      },
      py::arg("predictions"), py::arg("split"), py::arg("out"));

  m.def(
      "compare",
      [](const fs::path& run1, const fs::path& run2, const fs::path& out,
         std::optional<fs::path> split, double alpha, std::size_t family_size,
         const std::string& label1, const std::string& label2) {
        CompareConfig c;
        c.run1 = run1;
        c.run2 = run2;
        c.out = out;
        c.split = std::move(split);
        c.alpha = alpha;
        c.family_size = family_size;
        c.label1 = label1;
        c.label2 = label2;
        py::gil_scoped_release release;
        return cmd_compare(c);
      },
      py::arg("run1"), py::arg("run2"), py::arg("out"), py::arg("split") = py::none(),
      py::arg("alpha") = kDefaultAlpha, py::arg("family_size") = 1, py::arg("label1") = "run1",
      py::arg("label2") = "run2");

  m.def(
      "corpus_stats",
      [](const std::vector<fs::path>& splits, std::optional<fs::path> out) {
        return cmd_stats({splits, std::move(out)});
      },
      py::arg("splits"), py::arg("out") = py::none());

  m.def("split_tokens", &split_tokens, py::arg("text"));
  m.def(
      "exact_match",
      [](const TokenList& p, const TokenList& r) { return exact_match(p, r); },
      py::arg("pred"), py::arg("ref"));
  m.def(
      "bleu4",
      [](const std::vector<TokenList>& p, const std::vector<TokenList>& r) { return bleu4(p, r); },
      py::arg("predictions"), py::arg("references"));
  m.def(
      "rouge_l",
      [](const TokenList& p, const TokenList& r) { return rouge_l(p, r); }, py::arg("pred"),
      py::arg("ref"));
  m.def(
      "edit_distance",
      [](const TokenList& p, const TokenList& r) { return token_edit_distance(p, r); },
      py::arg("pred"), py::arg("ref"));

  m.def("_mcnemar_json", &mcnemar_json, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
  m.def("_compare_json", &compare_json, py::arg("run1"), py::arg("run2"),
        py::arg("alpha") = kDefaultAlpha, py::arg("family_size") = 1);
}
