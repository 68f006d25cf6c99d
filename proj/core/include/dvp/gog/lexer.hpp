// Copyright 2026 The DVP Authors.
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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace dvp::gog {

enum class TokenKind {
  kKeyword,
  kIdentifier,
  kDot,
  kStar,
  kComma,
  kLParen,
  kRParen,
  kColon,
  kString,
  kNumber,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  /// Keyword/identifier name, decoded string contents, or number spelling.
  std::string text;
  double number = 0.0;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Statement keywords. DATA, SCALE and COORD are reserved.
bool is_keyword(std::string_view word);

/// Splits a script into tokens; whitespace and '#' line comments are dropped.
/// Throws SyntaxError(kLex) on an unterminated string or an illegal character.
std::vector<Token> tokenize(std::string_view source);

}  // namespace dvp::gog
