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

#include "assertkit/traceability.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <set>

namespace assertkit {

namespace {

const std::vector<const MethodRecord*> kNoMethods;

bool in_test_directory(const std::string& path) {
  const std::filesystem::path p(path);
  for (const auto& segment : p.parent_path()) {
    if (segment == "test" || segment == "tests") return true;
  }
  return false;
}

bool usable_focal(const MethodRecord& m) {
  // A body is "{" ... "}"; anything beyond the braces counts as non-empty.
  return !m.is_test && m.body_tokens.size() > 2;
}

bool same_name_ignoring_first_case(std::string_view a, std::string_view b) {
  if (a.size() != b.size() || a.empty()) return false;
  return std::tolower(static_cast<unsigned char>(a[0])) ==
             std::tolower(static_cast<unsigned char>(b[0])) &&
         a.substr(1) == b.substr(1);
}

bool arity_accepts(const MethodRecord& m, std::size_t argc) {
  const std::size_t n = m.parameter_types.size();
  if (m.varargs) return argc + 1 >= n;
  return argc == n;
}

// Production classes the test invokes, in first-call order.
std::vector<std::string> invoked_production_classes(const MethodRecord& test,
                                                    const CorpusIndex& index) {
  std::vector<std::string> out;
  for (const InvocationRef& call : test.invocations) {
    if (!call.receiver_class) continue;
    auto cls = index.resolve_production_class(test.repo_id, *call.receiver_class,
                                              test.package_name);
    if (cls && std::find(out.begin(), out.end(), *cls) == out.end()) {
      out.push_back(*cls);
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(Provenance p) {
  return p == Provenance::kNamingConvention ? "NC" : "SCG";
}

CorpusIndex::CorpusIndex(std::span<const MethodRecord> records) {
  for (const MethodRecord& r : records) {
    RepoTables& t = repos_[r.repo_id];
    const std::string cls = r.qualified_class();
    auto& methods = t.by_class[cls];
    if (methods.empty()) {
      t.classes_by_simple_name[r.class_name].push_back(cls);
      t.production[cls] = !in_test_directory(r.path);
    }
    methods.push_back(&r);
    if (r.is_test) t.production[cls] = false;
    t.by_name[r.name].push_back(&r);
    t.by_signature.emplace(cls + "#" + r.signature, &r);
  }
}

const CorpusIndex::RepoTables* CorpusIndex::repo(const std::string& repo_id) const {
  auto it = repos_.find(repo_id);
  return it == repos_.end() ? nullptr : &it->second;
}

const std::vector<const MethodRecord*>& CorpusIndex::class_methods(
    const std::string& repo_id, const std::string& qualified_class) const {
  const RepoTables* t = repo(repo_id);
  if (!t) return kNoMethods;
  auto it = t->by_class.find(qualified_class);
  return it == t->by_class.end() ? kNoMethods : it->second;
}

const std::vector<const MethodRecord*>& CorpusIndex::methods_named(
    const std::string& repo_id, const std::string& name) const {
  const RepoTables* t = repo(repo_id);
  if (!t) return kNoMethods;
  auto it = t->by_name.find(name);
  return it == t->by_name.end() ? kNoMethods : it->second;
}

const MethodRecord* CorpusIndex::by_signature(const std::string& repo_id,
                                              const std::string& qualified_class,
                                              const std::string& signature) const {
  const RepoTables* t = repo(repo_id);
  if (!t) return nullptr;
  auto it = t->by_signature.find(qualified_class + "#" + signature);
  return it == t->by_signature.end() ? nullptr : it->second;
}

bool CorpusIndex::is_production_class(const std::string& repo_id,
                                      const std::string& qualified_class) const {
  const RepoTables* t = repo(repo_id);
  if (!t) return false;
  auto it = t->production.find(qualified_class);
  return it != t->production.end() && it->second;
}

std::optional<std::string> CorpusIndex::resolve_production_class(
    const std::string& repo_id, const std::string& simple_name,
    const std::string& from_package) const {
  const RepoTables* t = repo(repo_id);
  if (!t) return std::nullopt;
  auto it = t->classes_by_simple_name.find(simple_name);
  if (it == t->classes_by_simple_name.end()) return std::nullopt;
  std::vector<std::string> candidates;
  for (const std::string& cls : it->second) {
    if (is_production_class(repo_id, cls)) candidates.push_back(cls);
  }
  if (candidates.size() == 1) return candidates.front();
  std::vector<std::string> same_package;
  for (const std::string& cls : candidates) {
    const MethodRecord* any = t->by_class.at(cls).front();
    if (any->package_name == from_package) same_package.push_back(cls);
  }
  if (same_package.size() == 1) return same_package.front();
  return std::nullopt;
}

std::string strip_test_affix(std::string_view name) {
  if (name.starts_with("test") || name.starts_with("Test")) {
    name.remove_prefix(4);
  } else if (name.ends_with("Test")) {
    name.remove_suffix(4);
  }
  return std::string(name);
}

std::optional<const MethodRecord*> match_by_name(const MethodRecord& test,
                                                 const CorpusIndex& index) {
  const std::string target = strip_test_affix(test.name);
  if (target.empty()) return std::nullopt;

  std::vector<std::string> scope = invoked_production_classes(test, index);
  const std::string class_target = strip_test_affix(test.class_name);
  if (!class_target.empty() && class_target != test.class_name) {
    if (auto cls = index.resolve_production_class(test.repo_id, class_target,
                                                  test.package_name)) {
      if (std::find(scope.begin(), scope.end(), *cls) == scope.end()) {
        scope.push_back(*cls);
      }
    }
  }

  const MethodRecord* found = nullptr;
  for (const std::string& cls : scope) {
    for (const MethodRecord* m : index.class_methods(test.repo_id, cls)) {
      if (!usable_focal(*m) || !same_name_ignoring_first_case(m->name, target)) {
        continue;
      }
      if (found != nullptr) return std::nullopt;  // ambiguous
      found = m;
    }
  }
  if (found == nullptr) return std::nullopt;
  return found;
}

std::optional<std::string> select_focal_class(const MethodRecord& test,
                                              const CorpusIndex& index) {
  std::map<std::string, std::size_t> counts;
  for (const InvocationRef& call : test.invocations) {
    if (!call.receiver_class) continue;
    if (auto cls = index.resolve_production_class(
            test.repo_id, *call.receiver_class, test.package_name)) {
      ++counts[*cls];
    }
  }
  std::optional<std::string> best;
  std::size_t best_count = 0;
  bool tie = false;
  for (const auto& [cls, n] : counts) {
    if (n > best_count) {
      best = cls;
      best_count = n;
      tie = false;
    } else if (n == best_count) {
      tie = true;
    }
  }
  if (!best || tie) return std::nullopt;
  return best;
}

std::vector<const MethodRecord*> call_graph_intersection(
    const MethodRecord& test,
    std::span<const MethodRecord* const> focal_class_methods) {
  std::vector<const MethodRecord*> hits;
  if (focal_class_methods.empty()) return hits;
  const std::string& cls = focal_class_methods.front()->class_name;
  for (const InvocationRef& call : test.invocations) {
    if (call.receiver_class != cls) continue;
    for (const MethodRecord* m : focal_class_methods) {
      if (!usable_focal(*m) || m->name != call.callee ||
          !arity_accepts(*m, call.arg_count)) {
        continue;
      }
      if (std::find(hits.begin(), hits.end(), m) == hits.end()) hits.push_back(m);
    }
  }
  return hits;
}

std::optional<const MethodRecord*> match_by_call_graph(
    const MethodRecord& test,
    std::span<const MethodRecord* const> focal_class_methods) {
  std::vector<const MethodRecord*> hits =
      call_graph_intersection(test, focal_class_methods);
  if (hits.size() != 1) return std::nullopt;
  return hits.front();
}

std::optional<TestFocalPair> map_test_to_focal(const MethodRecord& test,
                                               const CorpusIndex& index) {
  if (!test.is_test) return std::nullopt;
  if (auto focal = match_by_name(test, index)) {
    return TestFocalPair{&test, *focal, Provenance::kNamingConvention};
  }
  auto cls = select_focal_class(test, index);
  if (!cls) return std::nullopt;
  const auto& methods = index.class_methods(test.repo_id, *cls);
  if (auto focal = match_by_call_graph(test, methods)) {
    return TestFocalPair{&test, *focal, Provenance::kStaticCallGraph};
  }
  return std::nullopt;
}

TraceResult trace_corpus(std::span<const MethodRecord> records,
                         const CorpusIndex& index) {
  TraceResult result;
  for (const MethodRecord& r : records) {
    if (!r.is_test) continue;
    ++result.summary.tests;
    if (auto pair = map_test_to_focal(r, index)) {
      if (pair->provenance == Provenance::kNamingConvention) {
        ++result.summary.naming_convention;
      } else {
        ++result.summary.static_call_graph;
      }
      result.pairs.push_back(*pair);
    } else {
      ++result.summary.unmapped;
    }
  }
  return result;
}

Json to_json(const TestFocalPair& pair) {
  Json j;
  j["repo"] = pair.test->repo_id;
  j["test_class"] = pair.test->qualified_class();
  j["test_signature"] = pair.test->signature;
  j["focal_class"] = pair.focal->qualified_class();
  j["focal_signature"] = pair.focal->signature;
  j["provenance"] = std::string(to_string(pair.provenance));
  return j;
}

Json to_json(const TraceSummary& s) {
  Json j;
  j["tests"] = s.tests;
  j["NC"] = s.naming_convention;
  j["SCG"] = s.static_call_graph;
  j["unmapped"] = s.unmapped;
  return j;
}

}  // namespace assertkit
