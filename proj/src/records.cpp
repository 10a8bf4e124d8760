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

#include "assertkit/records.h"

namespace assertkit {

std::vector<std::string> MethodRecord::declaration_tokens() const {
  std::vector<std::string> out;
  out.reserve(signature_tokens.size() + body_tokens.size());
  out.insert(out.end(), signature_tokens.begin(), signature_tokens.end());
  out.insert(out.end(), body_tokens.begin(), body_tokens.end());
  return out;
}

std::string MethodRecord::qualified_class() const {
  return package_name.empty() ? class_chain : package_name + "." + class_chain;
}

Json to_json(const InvocationRef& ref) {
  Json j;
  j["callee"] = ref.callee;
  j["argc"] = ref.arg_count;
  j["receiver"] = ref.receiver_class ? Json(*ref.receiver_class) : Json(nullptr);
  return j;
}

Json to_json(const MethodRecord& r) {
  Json j;
  j["repo"] = r.repo_id;
  j["path"] = r.path;
  j["package"] = r.package_name;
  j["class"] = r.class_name;
  j["class_chain"] = r.class_chain;
  j["name"] = r.name;
  j["signature"] = r.signature;
  j["return_type"] = r.return_type;
  j["parameter_types"] = r.parameter_types;
  j["varargs"] = r.varargs;
  j["line"] = r.line;
  j["is_test"] = r.is_test;
  j["annotations"] = r.annotations;
  j["doc_comment"] = r.doc_comment ? Json(*r.doc_comment) : Json(nullptr);
  j["signature_tokens"] = r.signature_tokens;
  j["body_tokens"] = r.body_tokens;
  Json calls = Json::array();
  for (const InvocationRef& ref : r.invocations) calls.push_back(to_json(ref));
  j["invocations"] = std::move(calls);
  return j;
}

MethodRecord method_record_from_json(const Json& j) {
  MethodRecord r;
  r.repo_id = j.at("repo").get<std::string>();
  r.path = j.at("path").get<std::string>();
  r.package_name = j.at("package").get<std::string>();
  r.class_name = j.at("class").get<std::string>();
  r.class_chain = j.at("class_chain").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.signature = j.at("signature").get<std::string>();
  r.return_type = j.at("return_type").get<std::string>();
  r.parameter_types = j.at("parameter_types").get<std::vector<std::string>>();
  r.varargs = j.at("varargs").get<bool>();
  r.line = j.at("line").get<std::size_t>();
  r.is_test = j.at("is_test").get<bool>();
  r.annotations = j.at("annotations").get<std::vector<std::string>>();
  if (!j.at("doc_comment").is_null()) {
    r.doc_comment = j.at("doc_comment").get<std::string>();
  }
  r.signature_tokens = j.at("signature_tokens").get<std::vector<std::string>>();
  r.body_tokens = j.at("body_tokens").get<std::vector<std::string>>();
  for (const Json& c : j.at("invocations")) {
    InvocationRef ref;
    ref.callee = c.at("callee").get<std::string>();
    ref.arg_count = c.at("argc").get<std::size_t>();
    if (!c.at("receiver").is_null()) {
      ref.receiver_class = c.at("receiver").get<std::string>();
    }
    r.invocations.push_back(std::move(ref));
  }
  return r;
}

}  // namespace assertkit
