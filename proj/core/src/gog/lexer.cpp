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

#include "dvp/gog/lexer.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include "dvp/error.hpp"

namespace dvp::gog {
namespace {

constexpr std::array<std::string_view, 5> kKeywords = {"ELEMENT", "GUIDE", "DATA", "SCALE",
                                                       "COORD"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view source) : src_(source) {}

  std::vector<Token> run() {
    std::vector<Token> tokens;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        advance();
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
        continue;
      }
      const std::size_t line = line_;
      const std::size_t column = column_;
      auto single = [&](TokenKind kind) {
        tokens.push_back(Token{kind, std::string(1, c), 0.0, line, column});
        advance();
      };
      switch (c) {
        case '.': single(TokenKind::kDot); continue;
        case '*': single(TokenKind::kStar); continue;
        case ',': single(TokenKind::kComma); continue;
        case '(': single(TokenKind::kLParen); continue;
        case ')': single(TokenKind::kRParen); continue;
        case ':': single(TokenKind::kColon); continue;
        case '"': tokens.push_back(string_literal()); continue;
        default: break;
      }
      if (digit(c) || (c == '-' && pos_ + 1 < src_.size() && digit(src_[pos_ + 1]))) {
        tokens.push_back(number());
        continue;
      }
      if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        std::string word(src_.substr(start, pos_ - start));
        TokenKind kind = is_keyword(word) ? TokenKind::kKeyword : TokenKind::kIdentifier;
        tokens.push_back(Token{kind, std::move(word), 0.0, line, column});
        continue;
      }
      throw SyntaxError(ErrorKind::kLex, line, column,
                        std::string("illegal character '") + c + "'");
    }
    return tokens;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  Token string_literal() {
    Token token{TokenKind::kString, "", 0.0, line_, column_};
    advance();  // opening quote
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') {
        throw SyntaxError(ErrorKind::kLex, token.line, token.column, "unterminated string");
      }
      char c = src_[pos_];
      if (c == '"') {
        advance();
        return token;
      }
      if (c == '\\') {
        advance();
        if (pos_ >= src_.size()) {
          throw SyntaxError(ErrorKind::kLex, token.line, token.column, "unterminated string");
        }
        char e = src_[pos_];
        switch (e) {
          case 'n': token.text.push_back('\n'); break;
          case 't': token.text.push_back('\t'); break;
          case '"': token.text.push_back('"'); break;
          case '\\': token.text.push_back('\\'); break;
          default:
            throw SyntaxError(ErrorKind::kLex, line_, column_,
                              std::string("unknown escape '\\") + e + "'");
        }
        advance();
        continue;
      }
      token.text.push_back(c);
      advance();
    }
  }

  Token number() {
    Token token{TokenKind::kNumber, "", 0.0, line_, column_};
    std::size_t start = pos_;
    if (src_[pos_] == '-') advance();
    while (pos_ < src_.size() && digit(src_[pos_])) advance();
    if (pos_ + 1 < src_.size() && src_[pos_] == '.' && digit(src_[pos_ + 1])) {
      advance();
      while (pos_ < src_.size() && digit(src_[pos_])) advance();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_;
      std::size_t save_col = column_;
      advance();
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
      if (pos_ < src_.size() && digit(src_[pos_])) {
        while (pos_ < src_.size() && digit(src_[pos_])) advance();
      } else {
        pos_ = save;
        column_ = save_col;
      }
    }
    token.text = std::string(src_.substr(start, pos_ - start));
    std::from_chars(token.text.data(), token.text.data() + token.text.size(), token.number);
    return token;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kDot: return "'.'";
    case TokenKind::kStar: return "'*'";
    case TokenKind::kComma: return "','";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kColon: return "':'";
    case TokenKind::kString: return "string";
    case TokenKind::kNumber: return "number";
  }
  return "token";
}

bool is_keyword(std::string_view word) {
  for (auto kw : kKeywords) {
    if (kw == word) return true;
  }
  return false;
}

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace dvp::gog
