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

#ifndef ASSERTKIT_RECORDS_H_
#define ASSERTKIT_RECORDS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace assertkit {

using Json = nlohmann::ordered_json;

struct SourceFile {
  std::string repo_id;
  std::string path;  // repo-relative, '/' separated
  std::string content;
};

struct InvocationRef {
  std::string callee;
  std::size_t arg_count = 0;
  std::optional<std::string> receiver_class;

  bool operator==(const InvocationRef&) const = default;
};

struct MethodRecord {
  std::string repo_id;
  std::string path;
  std::string package_name;
  std::string class_name;   // innermost simple name, "Outer$1" for anonymous
  std::string class_chain;  // enclosing chain, e.g. "Outer.Inner"
  std::string name;
  std::string return_type;
  std::vector<std::string> parameter_types;
  bool varargs = false;
  std::string signature;  // "ReturnType name(T1,T2)"
  std::vector<std::string> signature_tokens;  // modifiers through throws clause
  std::vector<std::string> body_tokens;       // "{" ... "}"
  std::optional<std::string> doc_comment;
  std::vector<std::string> annotations;
  std::vector<InvocationRef> invocations;
  bool is_test = false;
  std::size_t line = 0;

  // Signature and body tokens, the complete normalized declaration.
  std::vector<std::string> declaration_tokens() const;
  std::string qualified_class() const;

  bool operator==(const MethodRecord&) const = default;
};

Json to_json(const InvocationRef& ref);
Json to_json(const MethodRecord& record);
MethodRecord method_record_from_json(const Json& j);

}  // namespace assertkit

#endif  // ASSERTKIT_RECORDS_H_
