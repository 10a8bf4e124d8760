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

#ifndef ASSERTKIT_JAVA_LEXER_H_
#define ASSERTKIT_JAVA_LEXER_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace assertkit::java {

enum class TokenKind {
  kIdentifier,
  kKeyword,
  kNumber,
  kString,     // includes text blocks
  kCharacter,
  kOperator,   // operators and separators
  kLineComment,
  kBlockComment,
  kDocComment,
};

struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Token {
  TokenKind kind;
  std::string text;
  SourcePosition pos;

  bool is_comment() const {
    return kind == TokenKind::kLineComment || kind == TokenKind::kBlockComment ||
           kind == TokenKind::kDocComment;
  }
  bool is(std::string_view s) const { return text == s; }
};

class LexError : public std::runtime_error {
 public:
  LexError(const std::string& what, SourcePosition pos);
  SourcePosition position() const { return pos_; }

 private:
  SourcePosition pos_;
};

// Tokenizes Java source. Comments are kept as tokens so callers can attach
// doc blocks to declarations; literal contents are kept verbatim.
std::vector<Token> lex(std::string_view source);

// Lexes `source`, drops every comment and returns the token texts. Joining the
// result with single spaces gives the whitespace-normalized form.
std::vector<std::string> normalize_code(std::string_view source);

bool is_keyword(std::string_view word);

// True for a normalized token that is a plain identifier (not a keyword or
// literal).
bool is_identifier_token(std::string_view token);

std::string join_tokens(std::span<const std::string> tokens);

}  // namespace assertkit::java

#endif  // ASSERTKIT_JAVA_LEXER_H_
