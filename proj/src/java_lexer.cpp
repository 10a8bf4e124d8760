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

#include "assertkit/java_lexer.h"

#include <algorithm>
#include <array>
#include <unordered_set>

namespace assertkit::java {

namespace {

const std::unordered_set<std::string_view>& keyword_table() {
  static const std::unordered_set<std::string_view> kKeywords = {
      "abstract", "assert",     "boolean",   "break",     "byte",
      "case",     "catch",      "char",      "class",     "const",
      "continue", "default",    "do",        "double",    "else",
      "enum",     "extends",    "final",     "finally",   "float",
      "for",      "goto",       "if",        "implements", "import",
      "instanceof", "int",      "interface", "long",      "native",
      "new",      "package",    "private",   "protected", "public",
      "return",   "short",      "static",    "strictfp",  "super",
      "switch",   "synchronized", "this",    "throw",     "throws",
      "transient", "try",       "void",      "volatile",  "while",
      "true",     "false",      "null"};
  return kKeywords;
}

// Longest first so the scan below is maximal munch.
constexpr std::array<std::string_view, 38> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&",
    "||",   "==",  "!=",  "<=",  ">=",  "+=", "-=", "*=", "/=", "&=",
    "|=",   "^=",  "%=",  "<<",  ">>",  "=",  ">",  "<",  "!",  "~",
    "?",    ":",   "+",   "-",   "*",   "/",  "&",  "|"};
constexpr std::string_view kSingleChars = "^%@(){}[];,.";

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) {
  return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_whitespace();
      if (at_end()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  bool at_end() const { return i_ >= src_.size(); }
  char peek(std::size_t ahead = 0) const {
    return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s) const {
    return src_.substr(i_, s.size()) == s;
  }

  void advance(std::size_t n = 1) {
    for (std::size_t k = 0; k < n && i_ < src_.size(); ++k) {
      if (src_[i_] == '\n') {
        ++pos_.line;
        pos_.column = 1;
      } else {
        ++pos_.column;
      }
      ++i_;
    }
  }

  void skip_whitespace() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        advance();
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t begin, SourcePosition start) const {
    return Token{kind, std::string(src_.substr(begin, i_ - begin)), start};
  }

  Token next() {
    const std::size_t begin = i_;
    const SourcePosition start = pos_;
    const char c = peek();

    if (c == '/' && peek(1) == '/') {
      while (!at_end() && peek() != '\n') advance();
      return make(TokenKind::kLineComment, begin, start);
    }
    if (c == '/' && peek(1) == '*') {
      // "/**/" is an empty block comment, not a doc block.
      const bool doc = peek(2) == '*' && peek(3) != '/';
      advance(2);
      while (!at_end() && !starts_with("*/")) advance();
      if (at_end()) throw LexError("unterminated block comment", start);
      advance(2);
      return make(doc ? TokenKind::kDocComment : TokenKind::kBlockComment,
                  begin, start);
    }
    if (starts_with("\"\"\"")) return text_block(begin, start);
    if (c == '"') return quoted('"', TokenKind::kString, begin, start);
    if (c == '\'') return quoted('\'', TokenKind::kCharacter, begin, start);
    if (is_digit(static_cast<unsigned char>(c)) ||
        (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
      return number(begin, start);
    }
    if (is_ident_start(static_cast<unsigned char>(c))) {
      while (!at_end() && is_ident_part(static_cast<unsigned char>(peek()))) {
        advance();
      }
      Token t = make(TokenKind::kIdentifier, begin, start);
      if (is_keyword(t.text)) t.kind = TokenKind::kKeyword;
      return t;
    }
    for (std::string_view op : kOperators) {
      if (starts_with(op)) {
        advance(op.size());
        return make(TokenKind::kOperator, begin, start);
      }
    }
    if (kSingleChars.find(c) != std::string_view::npos) {
      advance();
      return make(TokenKind::kOperator, begin, start);
    }
    throw LexError(std::string("unexpected character '") + c + "'", start);
  }

  Token quoted(char quote, TokenKind kind, std::size_t begin,
               SourcePosition start) {
    advance();
    while (true) {
      if (at_end() || peek() == '\n') {
        throw LexError("unterminated literal", start);
      }
      char c = peek();
      if (c == '\\') {
        advance(2);
        continue;
      }
      advance();
      if (c == quote) break;
    }
    return make(kind, begin, start);
  }

  Token text_block(std::size_t begin, SourcePosition start) {
    advance(3);
    while (true) {
      if (at_end()) throw LexError("unterminated text block", start);
      if (peek() == '\\') {
        advance(2);
        continue;
      }
      if (starts_with("\"\"\"")) {
        advance(3);
        break;
      }
      advance();
    }
    return make(TokenKind::kString, begin, start);
  }

  Token number(std::size_t begin, SourcePosition start) {
    const bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
    bool seen_dot = false;
    while (!at_end()) {
      const char c = peek();
      const bool exponent = hex ? (c == 'p' || c == 'P') : (c == 'e' || c == 'E');
      if (exponent && (peek(1) == '+' || peek(1) == '-')) {
        advance(2);
        continue;
      }
      if (c == '.') {
        const char n = peek(1);
        if (seen_dot || n == '.' ||
            (is_ident_start(static_cast<unsigned char>(n)) &&
             std::string_view("eEfFdD").find(n) == std::string_view::npos)) {
          break;
        }
        seen_dot = true;
        advance();
        continue;
      }
      if (is_ident_part(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      break;
    }
    return make(TokenKind::kNumber, begin, start);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePosition pos_;
};

}  // namespace

LexError::LexError(const std::string& what, SourcePosition pos)
    : std::runtime_error(what + " at " + std::to_string(pos.line) + ":" +
                         std::to_string(pos.column)),
      pos_(pos) {}

std::vector<Token> lex(std::string_view source) { return Lexer(source).run(); }

std::vector<std::string> normalize_code(std::string_view source) {
  std::vector<std::string> out;
  for (Token& t : lex(source)) {
    if (!t.is_comment()) out.push_back(std::move(t.text));
  }
  return out;
}

bool is_keyword(std::string_view word) {
  return keyword_table().contains(word);
}

bool is_identifier_token(std::string_view token) {
  if (token.empty() || !is_ident_start(static_cast<unsigned char>(token[0]))) {
    return false;
  }
  return !is_keyword(token);
}

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (const std::string& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace assertkit::java
