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

// Extraction of Java method declarations and the metadata the traceability
// heuristics consume: signatures, doc blocks and call sites.

#ifndef ASSERTKIT_CORPUS_MINER_H_
#define ASSERTKIT_CORPUS_MINER_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "assertkit/java_lexer.h"
#include "assertkit/records.h"

namespace assertkit {

class MineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, java::SourcePosition pos);
  java::SourcePosition position() const { return pos_; }

 private:
  java::SourcePosition pos_;
};

struct ScanOptions {
  // fnmatch(3) patterns matched against "repo_id/path"; '*' crosses '/'.
  std::vector<std::string> include = {"*.java"};
  std::vector<std::string> exclude;
};

struct ScanResult {
  std::vector<SourceFile> files;
  std::size_t unreadable = 0;
};

// Every top-level directory under `root` is one repository; files placed
// directly in `root` belong to the repository "_root". Output is sorted by
// (repo_id, path). Throws MineError if `root` is not a readable directory.
ScanResult scan_repositories(const std::filesystem::path& root,
                             const ScanOptions& options);

bool is_valid_utf8(std::string_view text);

// Returns one record per method declaration that has a body. Constructors and
// abstract/interface methods are left out. Throws ParseError (or
// java::LexError) on malformed input.
std::vector<MethodRecord> parse_source(const SourceFile& file);

bool is_test_method(std::span<const std::string> annotations,
                    std::string_view method_name, std::string_view path);

// Turns a raw "/** ... */" block into whitespace-separated summarization
// tokens. Returns nullopt when nothing but comment syntax remains.
std::optional<std::vector<std::string>> clean_doc_comment(std::string_view raw);
std::optional<std::vector<std::string>> extract_doc_comment(
    const MethodRecord& record);

// Names with a statically known class. A name declared twice with different
// types, or with an array / primitive type, is known but unresolvable.
class TypeScope {
 public:
  void declare_field(const std::string& name, std::optional<std::string> type);
  void declare_local(const std::string& name, std::optional<std::string> type);

  bool knows(const std::string& name) const;
  std::optional<std::string> lookup(const std::string& name) const;
  std::optional<std::string> lookup_field(const std::string& name) const;

 private:
  using Table = std::map<std::string, std::optional<std::string>, std::less<>>;
  static void declare(Table& table, const std::string& name,
                      std::optional<std::string> type);

  Table fields_;
  Table locals_;
};

// Scans a body for local variable declarations ("Type name =", for-each
// variables, catch parameters, ...) and adds them to `scope`.
void collect_local_declarations(std::span<const std::string> body,
                                TypeScope& scope);

// One ref per call expression in source order. `enclosing_class` resolves
// "this.m()" receivers.
std::vector<InvocationRef> extract_invocations(
    std::span<const std::string> body, const TypeScope& scope,
    std::string_view enclosing_class);
std::vector<InvocationRef> extract_invocations(std::span<const std::string> body);

struct MineStats {
  std::size_t files_scanned = 0;
  std::size_t files_parsed = 0;
  std::size_t skipped_unreadable = 0;
  std::size_t skipped_undecodable = 0;
  std::size_t skipped_unparseable = 0;
  std::size_t methods = 0;
  std::size_t test_methods = 0;
};

struct MineResult {
  std::vector<MethodRecord> records;
  MineStats stats;
  std::vector<std::string> diagnostics;  // one line per skipped file
};

// Parses files on `jobs` worker threads; the merged output keeps scan order.
MineResult mine_files(std::span<const SourceFile> files, unsigned jobs = 1);
MineResult mine_corpus(const std::filesystem::path& root,
                       const ScanOptions& options, unsigned jobs = 1);

Json to_json(const MineStats& stats);

}  // namespace assertkit

#endif  // ASSERTKIT_CORPUS_MINER_H_
