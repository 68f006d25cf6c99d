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

#include "dvp/gog/parser.hpp"

#include <initializer_list>

#include "dvp/error.hpp"
#include "dvp/gog/lexer.hpp"

namespace dvp::gog {
namespace {

class Parser {
 public:
  Parser(std::string_view source, std::vector<Token> tokens)
      : tokens_(std::move(tokens)) {
    // End-of-input position: one past the last character.
    for (char c : source) {
      if (c == '\n') {
        ++end_line_;
        end_column_ = 1;
      } else {
        ++end_column_;
      }
    }
  }

  std::vector<GogStatement> script() {
    std::vector<GogStatement> statements;
    while (!at_end()) statements.push_back(statement());
    return statements;
  }

 private:
  GogStatement statement() {
    const Token& keyword = peek();
    if (keyword.kind == TokenKind::kIdentifier) {
      fail(keyword, "unknown statement keyword '" + keyword.text + "'");
    }
    if (keyword.kind != TokenKind::kKeyword) expected({"ELEMENT", "GUIDE"});
    GogStatement statement;
    statement.line = keyword.line;
    if (keyword.text == "ELEMENT") {
      statement.kind = StatementKind::kElement;
    } else if (keyword.text == "GUIDE") {
      statement.kind = StatementKind::kGuide;
    } else {
      fail(keyword, "reserved statement keyword '" + keyword.text + "' is not supported");
    }
    ++pos_;
    expect(TokenKind::kColon);
    if (at_end() || peek().kind != TokenKind::kIdentifier) expected({"identifier"});
    statement.call = call(path());
    return statement;
  }

  std::vector<std::string> path() {
    std::vector<std::string> segments;
    segments.push_back(expect(TokenKind::kIdentifier).text);
    while (!at_end() && peek().kind == TokenKind::kDot) {
      ++pos_;
      segments.push_back(expect(TokenKind::kIdentifier).text);
    }
    return segments;
  }

  CallExpr call(std::vector<std::string> segments) {
    CallExpr call{std::move(segments), {}};
    expect(TokenKind::kLParen);
    if (!at_end() && peek().kind == TokenKind::kRParen) {
      ++pos_;
      return call;
    }
    while (true) {
      call.args.push_back(expr());
      if (at_end()) expected({"','", "')'"});
      if (peek().kind == TokenKind::kComma) {
        ++pos_;
        continue;
      }
      if (peek().kind == TokenKind::kRParen) {
        ++pos_;
        return call;
      }
      expected({"','", "')'", "'*'"});
    }
  }

  Expr expr() {
    Expr left = primary();
    if (!at_end() && peek().kind == TokenKind::kStar) {
      const Token& star = peek();
      ++pos_;
      Expr right = primary();
      if (!cross_operand(left) || !cross_operand(right)) {
        fail(star, "operands of '*' must be identifiers or calls");
      }
      return Expr{CrossExpr{std::move(left), std::move(right)}};
    }
    return left;
  }

  static bool cross_operand(const Expr& e) {
    return e.as<Identifier>() != nullptr || e.as<CallExpr>() != nullptr;
  }

  Expr primary() {
    if (at_end()) expected({"identifier", "string", "number", "'('"});
    const Token& token = peek();
    switch (token.kind) {
      case TokenKind::kString:
        ++pos_;
        return Expr{StringLit{token.text}};
      case TokenKind::kNumber:
        ++pos_;
        return Expr{NumberLit{token.number}};
      case TokenKind::kLParen: {
        ++pos_;
        double first = expect(TokenKind::kNumber).number;
        expect(TokenKind::kComma);
        double second = expect(TokenKind::kNumber).number;
        expect(TokenKind::kRParen);
        return Expr{TupleLit{first, second}};
      }
      case TokenKind::kIdentifier: {
        auto segments = path();
        if (!at_end() && peek().kind == TokenKind::kLParen) return Expr{call(std::move(segments))};
        if (segments.size() > 1) expected({"'('"});
        return Expr{Identifier{std::move(segments.front())}};
      }
      default:
        expected({"identifier", "string", "number", "'('"});
    }
  }

  const Token& expect(TokenKind kind) {
    if (at_end() || peek().kind != kind) expected({std::string(to_string(kind))});
    return tokens_[pos_++];
  }

  [[noreturn]] void expected(std::initializer_list<std::string> options) {
    std::string message = "expected ";
    if (options.size() > 1) message += "one of ";
    bool first = true;
    for (const auto& option : options) {
      if (!first) message += ", ";
      message += option;
      first = false;
    }
    if (at_end()) {
      message += ", found end of input";
      throw SyntaxError(ErrorKind::kParse, end_line_, end_column_, message);
    }
    const Token& token = peek();
    message += ", found " + std::string(to_string(token.kind));
    if (token.kind == TokenKind::kIdentifier || token.kind == TokenKind::kKeyword ||
        token.kind == TokenKind::kNumber) {
      message += " '" + token.text + "'";
    }
    fail(token, message);
  }

  [[noreturn]] void fail(const Token& at, const std::string& message) {
    throw SyntaxError(ErrorKind::kParse, at.line, at.column, message);
  }

  bool at_end() const { return pos_ >= tokens_.size(); }
  const Token& peek() const { return tokens_[pos_]; }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t end_line_ = 1;
  std::size_t end_column_ = 1;
};

}  // namespace

std::vector<GogStatement> parse(std::string_view source) {
  return Parser(source, tokenize(source)).script();
}

}  // namespace dvp::gog
