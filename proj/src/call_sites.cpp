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

#include <cctype>
#include <unordered_set>

#include "assertkit/corpus_miner.h"

namespace assertkit {

namespace {

using Tokens = std::span<const std::string>;

const std::unordered_set<std::string_view> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

// Contextual keywords that look like identifiers but never name a type in
// declaration position.
const std::unordered_set<std::string_view> kNotATypeName = {"yield", "var",
                                                            "record"};

// Tokens allowed inside the type arguments of a declared type.
bool type_argument_token(const std::string& t) {
  static const std::unordered_set<std::string_view> kAllowed = {
      ".", ",", "?", "extends", "super", "[", "]", "&", "<", ">", ">>", ">>>"};
  return java::is_identifier_token(t) || kPrimitiveTypes.contains(t) ||
         kAllowed.contains(t);
}

int angle_weight(const std::string& t) {
  if (t == "<") return 1;
  if (t == ">") return -1;
  if (t == ">>") return -2;
  if (t == ">>>") return -3;
  return 0;
}

// Given toks[close] closing a type-argument list, returns the index of the
// matching '<', or npos if the span does not look like type arguments.
std::size_t match_angle_backwards(Tokens toks, std::size_t close) {
  int depth = 0;
  for (std::size_t k = close + 1; k-- > 0;) {
    const std::string& t = toks[k];
    if (!type_argument_token(t)) return std::string::npos;
    depth -= angle_weight(t);
    if (depth == 0) return t == "<" ? k : std::string::npos;
    if (depth < 0) return std::string::npos;
  }
  return std::string::npos;
}

std::size_t skip_angle_forward(Tokens toks, std::size_t open) {
  int depth = 0;
  std::size_t k = open;
  for (; k < toks.size(); ++k) {
    depth += angle_weight(toks[k]);
    if (depth <= 0) return k + 1;
  }
  return k;
}

std::size_t match_backward(Tokens toks, std::size_t close) {
  int depth = 0;
  for (std::size_t k = close + 1; k-- > 0;) {
    const std::string& t = toks[k];
    if (t == ")" || t == "]" || t == "}") ++depth;
    if (t == "(" || t == "[" || t == "{") {
      if (--depth == 0) return k;
    }
  }
  return std::string::npos;
}

bool class_like(const std::string& name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) {
    return false;
  }
  for (char c : name) {
    if (std::islower(static_cast<unsigned char>(c))) return true;
  }
  return false;  // ALL_CAPS reads as a constant, not a type
}

bool package_like(const std::string& name) {
  return !name.empty() && std::islower(static_cast<unsigned char>(name[0]));
}

// Type named by the creator expression starting after toks[new_pos] == "new",
// or nullopt for arrays and unparseable creators.
std::optional<std::string> created_type(Tokens toks, std::size_t new_pos) {
  std::size_t k = new_pos + 1;
  std::optional<std::string> last;
  while (k < toks.size() && java::is_identifier_token(toks[k])) {
    last = toks[k];
    ++k;
    if (k < toks.size() && toks[k] == "<") k = skip_angle_forward(toks, k);
    if (k < toks.size() && toks[k] == ".") {
      ++k;
      continue;
    }
    break;
  }
  if (!last || k >= toks.size() || toks[k] != "(") return std::nullopt;
  return last;
}

std::size_t count_arguments(Tokens toks, std::size_t open) {
  if (open + 1 < toks.size() && toks[open + 1] == ")") return 0;
  std::size_t commas = 0;
  int depth = 0;
  for (std::size_t k = open; k < toks.size(); ++k) {
    const std::string& t = toks[k];
    if (t == "(" || t == "[" || t == "{") {
      ++depth;
    } else if (t == ")" || t == "]" || t == "}") {
      if (--depth == 0) break;
    } else if (depth == 1 && t == ",") {
      ++commas;
    } else if (t == "new" || (t == "." && k + 1 < toks.size() && toks[k + 1] == "<")) {
      // Skip type arguments so "new HashMap<K, V>()" is one argument.
      std::size_t j = k + 1;
      while (j < toks.size() && (java::is_identifier_token(toks[j]) || toks[j] == ".")) {
        ++j;
      }
      if (j < toks.size() && toks[j] == "<") k = skip_angle_forward(toks, j) - 1;
    }
  }
  return commas + 1;
}

std::optional<std::string> resolve_receiver(Tokens toks, std::size_t name_pos,
                                            const TypeScope& scope,
                                            std::string_view enclosing_class) {
  if (name_pos < 2 || toks[name_pos - 1] != ".") return std::nullopt;
  std::size_t r = name_pos - 2;
  const std::string& recv = toks[r];

  if (recv == ")") {  // new Foo(...).m()
    const std::size_t open = match_backward(toks, r);
    if (open == std::string::npos || open == 0) return std::nullopt;
    std::size_t k = open - 1;
    if (toks[k] == ">") {
      k = match_angle_backwards(toks, k);
      if (k == std::string::npos || k == 0) return std::nullopt;
      --k;
    }
    while (k >= 2 && toks[k - 1] == "." && java::is_identifier_token(toks[k - 2])) {
      k -= 2;
    }
    if (k == 0 || toks[k - 1] != "new") return std::nullopt;
    return created_type(toks, k - 1);
  }
  if (recv == "this" && (r == 0 || toks[r - 1] != ".")) {
    if (enclosing_class.empty()) return std::nullopt;
    return std::string(enclosing_class);
  }
  if (!java::is_identifier_token(recv)) return std::nullopt;

  if (r == 0 || toks[r - 1] != ".") {
    if (scope.knows(recv)) return scope.lookup(recv);
    if (class_like(recv)) return recv;  // static call, e.g. Utils.parse(x)
    return std::nullopt;
  }
  // Qualified receiver: this.field.m() or pkg.path.Type.m().
  if (r >= 2 && toks[r - 2] == "this" && (r == 2 || toks[r - 3] != ".")) {
    return scope.lookup_field(recv);
  }
  if (!class_like(recv)) return std::nullopt;
  std::size_t k = r;
  while (k >= 2 && toks[k - 1] == ".") {
    if (!java::is_identifier_token(toks[k - 2]) || !package_like(toks[k - 2])) {
      return std::nullopt;
    }
    k -= 2;
  }
  if (k > 0 && toks[k - 1] == "new") return std::nullopt;
  return recv;
}

bool declaration_follower(const std::string& t) {
  return t == "=" || t == ";" || t == "," || t == ":" || t == ")";
}

}  // namespace

void TypeScope::declare(Table& table, const std::string& name,
                        std::optional<std::string> type) {
  auto [it, inserted] = table.emplace(name, type);
  if (!inserted && it->second != type) it->second.reset();
}

void TypeScope::declare_field(const std::string& name,
                              std::optional<std::string> type) {
  declare(fields_, name, std::move(type));
}

void TypeScope::declare_local(const std::string& name,
                              std::optional<std::string> type) {
  declare(locals_, name, std::move(type));
}

bool TypeScope::knows(const std::string& name) const {
  return locals_.contains(name) || fields_.contains(name);
}

std::optional<std::string> TypeScope::lookup(const std::string& name) const {
  if (auto it = locals_.find(name); it != locals_.end()) return it->second;
  return lookup_field(name);
}

std::optional<std::string> TypeScope::lookup_field(const std::string& name) const {
  if (auto it = fields_.find(name); it != fields_.end()) return it->second;
  return std::nullopt;
}

void collect_local_declarations(std::span<const std::string> body,
                                TypeScope& scope) {
  for (std::size_t i = 1; i + 1 < body.size(); ++i) {
    const std::string& name = body[i];
    if (!java::is_identifier_token(name) || !declaration_follower(body[i + 1])) {
      continue;
    }
    const std::string& prev = body[i - 1];
    if (prev == "var") {
      std::optional<std::string> type;
      if (body[i + 1] == "=" && i + 2 < body.size() && body[i + 2] == "new") {
        type = created_type(body, i + 2);
      }
      scope.declare_local(name, type);
    } else if (kPrimitiveTypes.contains(prev) || prev == "]") {
      // Primitive or array: known name without a class to resolve to. A "]"
      // also ends index expressions ("a[i] = x"), which never precede an
      // identifier, so this branch only sees "T[] name".
      scope.declare_local(name, std::nullopt);
    } else if (prev == ">") {
      const std::size_t open = match_angle_backwards(body, i - 1);
      if (open == std::string::npos || open == 0) continue;
      if (!java::is_identifier_token(body[open - 1])) continue;
      scope.declare_local(name, body[open - 1]);
    } else if (java::is_identifier_token(prev) && !kNotATypeName.contains(prev)) {
      scope.declare_local(name, prev);
    }
  }
}

std::vector<InvocationRef> extract_invocations(
    std::span<const std::string> body, const TypeScope& scope,
    std::string_view enclosing_class) {
  std::vector<InvocationRef> out;
  for (std::size_t i = 0; i + 1 < body.size(); ++i) {
    if (!java::is_identifier_token(body[i]) || body[i + 1] != "(") continue;
    if (i > 0) {
      const std::string& prev = body[i - 1];
      if (prev == "new" || prev == "@") continue;
      // "Type name(" declares a method (anonymous or local class member).
      if (java::is_identifier_token(prev) || kPrimitiveTypes.contains(prev) ||
          prev == "void" || prev == "]") {
        continue;
      }
      if (prev == ">") {
        const std::size_t open = match_angle_backwards(body, i - 1);
        if (open == std::string::npos || open == 0 || body[open - 1] != ".") {
          continue;
        }
      }
      if (prev == ".") {
        // Qualified creator: new a.b.Foo(...)
        std::size_t k = i;
        while (k >= 2 && body[k - 1] == "." && java::is_identifier_token(body[k - 2])) {
          k -= 2;
        }
        if (k > 0 && body[k - 1] == "new") continue;
      }
    }
    InvocationRef ref;
    ref.callee = body[i];
    ref.arg_count = count_arguments(body, i + 1);
    std::size_t name_pos = i;
    // Explicit type arguments: recv.<T>m(...)
    if (name_pos > 0 && body[name_pos - 1] == ">") {
      const std::size_t open = match_angle_backwards(body, name_pos - 1);
      if (open != std::string::npos) name_pos = open;
    }
    ref.receiver_class = resolve_receiver(body, name_pos, scope, enclosing_class);
    out.push_back(std::move(ref));
  }
  return out;
}

std::vector<InvocationRef> extract_invocations(std::span<const std::string> body) {
  TypeScope scope;
  collect_local_declarations(body, scope);
  return extract_invocations(body, scope, "");
}

}  // namespace assertkit
