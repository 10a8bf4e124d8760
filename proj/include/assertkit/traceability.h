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

// Test-to-focal traceability: a naming-convention match first, then a
// static-call-graph fallback over the most referenced production class.

#ifndef ASSERTKIT_TRACEABILITY_H_
#define ASSERTKIT_TRACEABILITY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "assertkit/records.h"

namespace assertkit {

enum class Provenance { kNamingConvention, kStaticCallGraph };

std::string_view to_string(Provenance p);

struct TestFocalPair {
  const MethodRecord* test = nullptr;
  const MethodRecord* focal = nullptr;
  Provenance provenance = Provenance::kNamingConvention;
};

// Per-repository lookup tables over a record set. Holds pointers into the
// span passed to the constructor, which must outlive the index. Immutable
// once built.
class CorpusIndex {
 public:
  explicit CorpusIndex(std::span<const MethodRecord> records);

  // Methods declared by a class, keyed by qualified class name.
  const std::vector<const MethodRecord*>& class_methods(
      const std::string& repo, const std::string& qualified_class) const;
  const std::vector<const MethodRecord*>& methods_named(
      const std::string& repo, const std::string& name) const;
  const MethodRecord* by_signature(const std::string& repo,
                                   const std::string& qualified_class,
                                   const std::string& signature) const;

  // A production class declares no test methods and lives outside any
  // "test"/"tests" directory.
  bool is_production_class(const std::string& repo,
                           const std::string& qualified_class) const;

  // Maps a simple class name seen from code in `from_package` to a unique
  // production class of the repo: the only one with that name, else the only
  // one in `from_package`. nullopt otherwise.
  std::optional<std::string> resolve_production_class(
      const std::string& repo, const std::string& simple_name,
      const std::string& from_package) const;

 private:
  struct RepoTables {
    std::map<std::string, std::vector<const MethodRecord*>> by_class;
    std::map<std::string, std::vector<std::string>> classes_by_simple_name;
    std::map<std::string, std::vector<const MethodRecord*>> by_name;
    std::map<std::string, const MethodRecord*> by_signature;
    std::map<std::string, bool> production;
  };
  const RepoTables* repo(const std::string& repo_id) const;

  std::map<std::string, RepoTables> repos_;
};

// "testFoo" / "TestFoo" -> "Foo", "fooTest" -> "foo"; empty if nothing is left.
std::string strip_test_affix(std::string_view name);

std::optional<const MethodRecord*> match_by_name(const MethodRecord& test,
                                                 const CorpusIndex& index);
std::optional<std::string> select_focal_class(const MethodRecord& test,
                                              const CorpusIndex& index);
// Methods of `focal_class_methods` (all from one class) whose name and arity
// match a call the test makes on that class; a result only if exactly one.
std::optional<const MethodRecord*> match_by_call_graph(
    const MethodRecord& test,
    std::span<const MethodRecord* const> focal_class_methods);
std::vector<const MethodRecord*> call_graph_intersection(
    const MethodRecord& test,
    std::span<const MethodRecord* const> focal_class_methods);

std::optional<TestFocalPair> map_test_to_focal(const MethodRecord& test,
                                               const CorpusIndex& index);

struct TraceSummary {
  std::size_t tests = 0;
  std::size_t naming_convention = 0;
  std::size_t static_call_graph = 0;
  std::size_t unmapped = 0;
};

struct TraceResult {
  std::vector<TestFocalPair> pairs;
  TraceSummary summary;
};

// Maps every test method in `records`, in record order.
TraceResult trace_corpus(std::span<const MethodRecord> records,
                         const CorpusIndex& index);

Json to_json(const TestFocalPair& pair);
Json to_json(const TraceSummary& summary);

}  // namespace assertkit

#endif  // ASSERTKIT_TRACEABILITY_H_
