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

// Declaration-level recursive descent over the Java token stream. Method
// bodies are not parsed into statements; they are delimited with a bracket
// match table and scanned for nested (anonymous and local) classes.

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "assertkit/corpus_miner.h"

namespace assertkit {

ParseError::ParseError(const std::string& what, java::SourcePosition pos)
    : std::runtime_error(what + " at " + std::to_string(pos.line) + ":" +
                         std::to_string(pos.column)),
      pos_(pos) {}

namespace {

using java::Token;
using java::TokenKind;

const std::unordered_set<std::string_view> kModifiers = {
    "public",   "protected", "private",      "static",    "abstract",
    "final",    "native",    "synchronized", "transient", "volatile",
    "strictfp", "default",   "sealed"};

const std::unordered_set<std::string_view> kPrimitives = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double", "void"};

bool word_like(const std::string& t) {
  return !t.empty() && (std::isalnum(static_cast<unsigned char>(t[0])) ||
                        t[0] == '_' || t[0] == '$' ||
                        static_cast<unsigned char>(t[0]) >= 0x80);
}

// Canonical type text: tokens glued together, a single space only where two
// words would otherwise merge ("? extends Foo").
std::string canonical_join(std::span<const std::string> toks) {
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i > 0 && word_like(toks[i]) &&
        (word_like(toks[i - 1]) || toks[i - 1] == "?")) {
      out.push_back(' ');
    }
    out += toks[i];
  }
  return out;
}

struct TypeRef {
  std::string text;
  std::optional<std::string> class_name;  // nullopt for primitives and arrays
};

struct ClassContext {
  std::string name;
  std::string chain;
  std::string kind;
  const ClassContext* outer = nullptr;
  std::vector<std::pair<std::string, std::optional<std::string>>> fields;
  int anonymous_count = 0;
};

struct PendingMethod {
  std::size_t order;  // token index of the declaration start
  const ClassContext* owner;
  MethodRecord record;
  std::vector<std::pair<std::string, std::optional<std::string>>> params;
};

class Parser {
 public:
  Parser(const SourceFile& file, std::vector<Token> all) : file_(file) {
    std::optional<std::string> pending_doc;
    for (Token& t : all) {
      if (t.kind == TokenKind::kDocComment) {
        pending_doc = t.text;
      } else if (!t.is_comment()) {
        docs_.push_back(pending_doc);
        pending_doc.reset();
        toks_.push_back(std::move(t));
      }
    }
    texts_.reserve(toks_.size());
    for (const Token& t : toks_) texts_.push_back(t.text);
    build_match_table();
  }

  std::vector<MethodRecord> run() {
    parse_compilation_unit();
    std::stable_sort(pending_.begin(), pending_.end(),
                     [](const PendingMethod& a, const PendingMethod& b) {
                       return a.order < b.order;
                     });
    std::vector<MethodRecord> out;
    out.reserve(pending_.size());
    for (PendingMethod& m : pending_) {
      TypeScope scope;
      std::vector<const ClassContext*> chain;
      for (const ClassContext* c = m.owner; c != nullptr; c = c->outer) {
        chain.push_back(c);
      }
      // Outermost first so inner declarations shadow outer ones.
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        for (const auto& [name, type] : (*it)->fields) {
          scope.declare_field(name, type);
        }
      }
      for (const auto& [name, type] : m.params) scope.declare_local(name, type);
      collect_local_declarations(m.record.body_tokens, scope);
      m.record.invocations =
          extract_invocations(m.record.body_tokens, scope, m.owner->name);
      out.push_back(std::move(m.record));
    }
    return out;
  }

 private:
  // --- cursor helpers -----------------------------------------------------

  bool at_end() const { return p_ >= toks_.size(); }
  const std::string& text(std::size_t i) const {
    static const std::string kEmpty;
    return i < texts_.size() ? texts_[i] : kEmpty;
  }
  bool at(std::string_view s) const { return !at_end() && texts_[p_] == s; }
  bool at_ident() const {
    return !at_end() && toks_[p_].kind == TokenKind::kIdentifier;
  }
  bool ident_at(std::size_t i) const {
    return i < toks_.size() && toks_[i].kind == TokenKind::kIdentifier;
  }

  [[noreturn]] void fail(const std::string& what) const {
    java::SourcePosition pos;
    if (!toks_.empty()) pos = toks_[std::min(p_, toks_.size() - 1)].pos;
    throw ParseError(what, pos);
  }

  void expect(std::string_view s) {
    if (!at(s)) {
      fail("expected '" + std::string(s) + "' but found '" +
           (at_end() ? std::string("<eof>") : texts_[p_]) + "'");
    }
    ++p_;
  }

  std::string expect_ident() {
    if (!at_ident()) fail("expected identifier");
    return texts_[p_++];
  }

  void build_match_table() {
    match_.assign(toks_.size(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      const std::string& t = texts_[i];
      if (t == "(" || t == "[" || t == "{") {
        stack.push_back(i);
      } else if (t == ")" || t == "]" || t == "}") {
        const char open = t == ")" ? '(' : t == "]" ? '[' : '{';
        if (stack.empty() || texts_[stack.back()][0] != open) {
          throw ParseError("unbalanced '" + t + "'", toks_[i].pos);
        }
        match_[stack.back()] = i;
        match_[i] = stack.back();
        stack.pop_back();
      }
    }
    if (!stack.empty()) {
      throw ParseError("unclosed '" + texts_[stack.back()] + "'",
                       toks_[stack.back()].pos);
    }
  }

  // Jumps from an opening bracket to just past its partner.
  void skip_balanced() { p_ = match_[p_] + 1; }

  void skip_angle() {
    int depth = 0;
    do {
      if (at_end()) fail("unterminated type arguments");
      const std::string& t = texts_[p_];
      if (t == "<") ++depth;
      else if (t == ">") --depth;
      else if (t == ">>") depth -= 2;
      else if (t == ">>>") depth -= 3;
      else if (t == "(" || t == "[" || t == "{") {
        skip_balanced();
        continue;
      }
      ++p_;
    } while (depth > 0);
  }

  // --- declarations -------------------------------------------------------

  void parse_compilation_unit() {
    skip_annotations_and_modifiers(nullptr);
    if (at("package")) {
      ++p_;
      std::string pkg;
      while (!at(";")) {
        if (at_end()) fail("unterminated package declaration");
        pkg += texts_[p_++];
      }
      ++p_;
      package_ = pkg;
    }
    while (!at_end()) {
      if (at("import")) {
        while (!at(";")) {
          if (at_end()) fail("unterminated import");
          ++p_;
        }
        ++p_;
        continue;
      }
      if (at(";")) {
        ++p_;
        continue;
      }
      skip_annotations_and_modifiers(nullptr);
      if (at_end()) break;
      if (!starts_type_declaration()) fail("expected type declaration");
      parse_type_declaration(nullptr);
    }
  }

  bool starts_type_declaration() const {
    if (at("class") || at("interface") || at("enum")) return true;
    if (at("@") && text(p_ + 1) == "interface") return true;
    return at("record") && ident_at(p_ + 1) &&
           (text(p_ + 2) == "(" || text(p_ + 2) == "<");
  }

  // Consumes annotations and modifiers; returns annotation names and appends
  // the modifier texts to `modifiers` if given.
  std::vector<std::string> skip_annotations_and_modifiers(
      std::vector<std::string>* modifiers) {
    std::vector<std::string> annotations;
    while (!at_end()) {
      if (at("@") && text(p_ + 1) != "interface") {
        ++p_;
        std::string name = expect_ident();
        while (at(".") && ident_at(p_ + 1)) {
          name = texts_[p_ + 1];
          p_ += 2;
        }
        annotations.push_back(name);
        if (at("(")) skip_balanced();
      } else if (kModifiers.contains(texts_[p_]) &&
                 toks_[p_].kind != TokenKind::kOperator) {
        if (modifiers) modifiers->push_back(texts_[p_]);
        ++p_;
      } else if (at("non") && text(p_ + 1) == "-" && text(p_ + 2) == "sealed") {
        if (modifiers) modifiers->push_back("non-sealed");
        p_ += 3;
      } else {
        break;
      }
    }
    return annotations;
  }

  const ClassContext* parse_type_declaration(const ClassContext* outer) {
    std::string kind;
    if (at("@")) {
      p_ += 2;
      kind = "@interface";
    } else {
      kind = texts_[p_++];
    }
    ClassContext& ctx = contexts_.emplace_back();
    ctx.name = expect_ident();
    ctx.chain = outer ? outer->chain + "." + ctx.name : ctx.name;
    ctx.kind = kind;
    ctx.outer = outer;
    if (at("<")) skip_angle();
    if (kind == "record" && at("(")) {
      const std::size_t close = match_[p_];
      ++p_;
      while (p_ < close) {
        skip_annotations_and_modifiers(nullptr);
        TypeRef type = parse_type();
        if (at("...")) {
          ++p_;
          type.class_name.reset();
        }
        ctx.fields.emplace_back(expect_ident(), type.class_name);
        if (at(",")) ++p_;
      }
      p_ = close + 1;
    }
    while (!at("{")) {
      if (at_end()) fail("expected class body");
      if (at("<")) {
        skip_angle();
      } else if (at("(")) {
        skip_balanced();
      } else {
        ++p_;
      }
    }
    parse_class_body(ctx);
    return &ctx;
  }

  void parse_class_body(ClassContext& ctx) {
    const std::size_t close = match_[p_];
    expect("{");
    if (ctx.kind == "enum") parse_enum_constants(ctx, close);
    while (p_ < close) parse_member(ctx);
    p_ = close + 1;
  }

  void parse_enum_constants(ClassContext& ctx, std::size_t close) {
    while (p_ < close && !at(";")) {
      skip_annotations_and_modifiers(nullptr);
      if (at(",")) {
        ++p_;
        continue;
      }
      std::string constant = expect_ident();
      if (at("(")) {
        scan_nested(ctx, p_ + 1, match_[p_]);
        skip_balanced();
      }
      if (at("{")) parse_anonymous_body(ctx);
      if (at(",")) ++p_;
    }
    if (at(";")) ++p_;
  }

  void parse_anonymous_body(ClassContext& outer) {
    ClassContext& anon = contexts_.emplace_back();
    anon.name = outer.name + "$" + std::to_string(++outer.anonymous_count);
    anon.chain = outer.chain + "$" + std::to_string(outer.anonymous_count);
    anon.kind = "class";
    anon.outer = &outer;
    parse_class_body(anon);
  }

  void parse_member(ClassContext& ctx) {
    if (at(";")) {
      ++p_;
      return;
    }
    const std::size_t start = p_;
    const std::optional<std::string> doc = docs_[p_];
    std::vector<std::string> modifiers;
    std::vector<std::string> annotations =
        skip_annotations_and_modifiers(&modifiers);

    if (at("{")) {  // initializer block
      scan_nested(ctx, p_ + 1, match_[p_]);
      skip_balanced();
      return;
    }
    if (starts_type_declaration()) {
      parse_type_declaration(&ctx);
      return;
    }

    std::vector<std::string> sig;
    sig.insert(sig.end(), modifiers.begin(), modifiers.end());
    if (at("<")) {
      const std::size_t b = p_;
      skip_angle();
      sig.insert(sig.end(), texts_.begin() + b, texts_.begin() + p_);
    }
    // Annotations may sit between modifiers and the type.
    for (std::string& a : skip_annotations_and_modifiers(&sig)) {
      annotations.push_back(std::move(a));
    }

    if (at_ident() && texts_[p_] == ctx.name &&
        (text(p_ + 1) == "(" || text(p_ + 1) == "{")) {
      ++p_;  // constructor or compact record constructor: not extracted
      if (at("(")) skip_balanced();
      while (!at("{") && !at(";")) {
        if (at_end()) fail("unterminated constructor");
        ++p_;
      }
      if (at("{")) {
        scan_nested(ctx, p_ + 1, match_[p_]);
        skip_balanced();
      } else {
        ++p_;
      }
      return;
    }

    const std::size_t type_begin = p_;
    TypeRef type = parse_type();
    sig.insert(sig.end(), texts_.begin() + type_begin, texts_.begin() + p_);
    std::string name = expect_ident();

    if (!at("(")) {
      parse_field_declarators(ctx, type, name);
      return;
    }

    MethodRecord rec;
    rec.repo_id = file_.repo_id;
    rec.path = file_.path;
    rec.package_name = package_;
    rec.class_name = ctx.name;
    rec.class_chain = ctx.chain;
    rec.name = name;
    rec.doc_comment = doc;
    rec.annotations = std::move(annotations);
    rec.line = toks_[start].pos.line;

    PendingMethod pending{start, &ctx, {}, {}};
    const std::size_t params_begin = p_;
    parse_parameters(rec, pending.params);
    sig.push_back(name);
    sig.insert(sig.end(), texts_.begin() + params_begin, texts_.begin() + p_);

    std::string return_type = type.text;
    while (at("[") && text(p_ + 1) == "]") {
      return_type += "[]";
      sig.push_back("[");
      sig.push_back("]");
      p_ += 2;
    }
    if (at("throws")) {
      while (!at("{") && !at(";")) {
        if (at_end()) fail("unterminated throws clause");
        sig.push_back(texts_[p_++]);
      }
    }
    if (at("default")) {  // annotation element default value
      while (!at(";")) {
        if (at_end()) fail("unterminated annotation element");
        if (at("(") || at("{") || at("[")) {
          skip_balanced();
        } else {
          ++p_;
        }
      }
    }
    if (at(";")) {  // abstract or interface method: no body
      ++p_;
      return;
    }
    if (!at("{")) fail("expected method body");

    const std::size_t body_close = match_[p_];
    rec.body_tokens.assign(texts_.begin() + p_, texts_.begin() + body_close + 1);
    scan_nested(ctx, p_ + 1, body_close);
    p_ = body_close + 1;

    rec.return_type = return_type;
    rec.signature = return_type + " " + name + "(";
    for (std::size_t i = 0; i < rec.parameter_types.size(); ++i) {
      if (i > 0) rec.signature += ",";
      rec.signature += rec.parameter_types[i];
    }
    rec.signature += ")";
    rec.signature_tokens = std::move(sig);
    rec.is_test = is_test_method(rec.annotations, rec.name, rec.path);
    pending.record = std::move(rec);
    pending_.push_back(std::move(pending));
  }

  void parse_parameters(
      MethodRecord& rec,
      std::vector<std::pair<std::string, std::optional<std::string>>>& out) {
    const std::size_t close = match_[p_];
    ++p_;
    while (p_ < close) {
      skip_annotations_and_modifiers(nullptr);
      TypeRef type = parse_type();
      std::string type_text = type.text;
      if (at("...")) {
        ++p_;
        rec.varargs = true;
        type_text += "...";
        type.class_name.reset();
      }
      if (at("this")) {  // receiver parameter
        ++p_;
      } else {
        std::string pname = expect_ident();
        while (at("[") && text(p_ + 1) == "]") {
          type_text += "[]";
          type.class_name.reset();
          p_ += 2;
        }
        rec.parameter_types.push_back(type_text);
        out.emplace_back(pname, type.class_name);
      }
      if (p_ < close) expect(",");
    }
    p_ = close + 1;
  }

  TypeRef parse_type() {
    skip_annotations_and_modifiers(nullptr);
    const std::size_t begin = p_;
    TypeRef ref;
    if (!at_end() && kPrimitives.contains(texts_[p_])) {
      ++p_;
    } else {
      std::string last = expect_ident();
      while (true) {
        if (at("<")) skip_angle();
        if (at(".") && ident_at(p_ + 1)) {
          last = texts_[p_ + 1];
          p_ += 2;
          continue;
        }
        if (at(".") && text(p_ + 1) == "@") {  // annotated nested type
          ++p_;
          skip_annotations_and_modifiers(nullptr);
          last = expect_ident();
          continue;
        }
        break;
      }
      ref.class_name = last;
    }
    bool array = false;
    while (at("[") && text(p_ + 1) == "]") {
      array = true;
      p_ += 2;
    }
    if (array) ref.class_name.reset();
    ref.text = canonical_join(
        std::span<const std::string>(texts_).subspan(begin, p_ - begin));
    return ref;
  }

  void parse_field_declarators(ClassContext& ctx, const TypeRef& type,
                               std::string name) {
    while (true) {
      std::optional<std::string> cls = type.class_name;
      while (at("[") && text(p_ + 1) == "]") {
        cls.reset();
        p_ += 2;
      }
      ctx.fields.emplace_back(name, cls);
      if (at("=")) {
        ++p_;
        const std::size_t begin = p_;
        skip_initializer();
        scan_nested(ctx, begin, p_);
      }
      if (at(",")) {
        ++p_;
        name = expect_ident();
        continue;
      }
      expect(";");
      return;
    }
  }

  // Advances to the ',' or ';' that ends a field initializer.
  void skip_initializer() {
    while (!at_end() && !at(",") && !at(";")) {
      if (at("(") || at("[") || at("{")) {
        skip_balanced();
      } else if (at("new")) {
        ++p_;
        while (at_ident() || at(".")) ++p_;
        if (at("<")) skip_angle();
      } else if (at(".") && text(p_ + 1) == "<") {
        ++p_;
        skip_angle();
      } else {
        ++p_;
      }
    }
  }

  // Finds anonymous class bodies and local type declarations in [begin, end)
  // and parses them as classes nested in `ctx`.
  void scan_nested(ClassContext& ctx, std::size_t begin, std::size_t end) {
    const std::size_t saved = p_;
    std::set<std::size_t> anonymous_bodies;
    std::size_t i = begin;
    while (i < end) {
      const std::string& t = texts_[i];
      if (anonymous_bodies.contains(i)) {
        p_ = i;
        parse_anonymous_body(ctx);
        i = p_;
        continue;
      }
      if (t == "new") {
        std::size_t j = i + 1;
        while (j < end && (ident_at(j) || texts_[j] == "." || texts_[j] == "@")) {
          ++j;
        }
        if (j < end && texts_[j] == "<") {
          p_ = j;
          skip_angle();
          j = p_;
        }
        if (j < end && texts_[j] == "(" && match_[j] + 1 < end &&
            texts_[match_[j] + 1] == "{") {
          anonymous_bodies.insert(match_[j] + 1);
        }
      } else if ((t == "class" || t == "interface" || t == "enum") &&
                 (i == 0 || texts_[i - 1] != ".") && ident_at(i + 1)) {
        p_ = i;
        parse_type_declaration(&ctx);
        i = p_;
        continue;
      }
      ++i;
    }
    p_ = saved;
  }

  const SourceFile& file_;
  std::vector<Token> toks_;
  std::vector<std::string> texts_;
  std::vector<std::optional<std::string>> docs_;
  std::vector<std::size_t> match_;
  std::size_t p_ = 0;
  std::string package_;
  std::deque<ClassContext> contexts_;
  std::vector<PendingMethod> pending_;
};

}  // namespace

std::vector<MethodRecord> parse_source(const SourceFile& file) {
  return Parser(file, java::lex(file.content)).run();
}

}  // namespace assertkit
