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

#include "dvp/gog/ast.hpp"

#include <charconv>

namespace dvp::gog {

std::string CallExpr::dotted() const {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += path[i];
  }
  return out;
}

bool operator==(const Expr& a, const Expr& b) { return a.node == b.node; }

bool operator==(const CallExpr& a, const CallExpr& b) {
  return a.path == b.path && a.args == b.args;
}

bool operator==(const CrossExpr& a, const CrossExpr& b) {
  return *a.left == *b.left && *a.right == *b.right;
}

namespace {

std::string number_text(double value) {
  char buffer[32];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string call_source(const CallExpr& call) {
  std::string out = call.dotted() + "(";
  for (std::size_t i = 0; i < call.args.size(); ++i) {
    if (i) out += ", ";
    out += to_source(call.args[i]);
  }
  out += ")";
  return out;
}

struct SourceVisitor {
  std::string operator()(const CallExpr& call) const { return call_source(call); }
  std::string operator()(const Identifier& id) const { return id.name; }
  std::string operator()(const StringLit& s) const { return quoted(s.value); }
  std::string operator()(const NumberLit& n) const { return number_text(n.value); }
  std::string operator()(const TupleLit& t) const {
    return "(" + number_text(t.first) + "," + number_text(t.second) + ")";
  }
  std::string operator()(const CrossExpr& c) const {
    return to_source(*c.left) + "*" + to_source(*c.right);
  }
};

}  // namespace

std::string to_source(const Expr& expr) { return std::visit(SourceVisitor{}, expr.node); }

std::string to_source(const GogStatement& statement) {
  const char* keyword = statement.kind == StatementKind::kElement ? "ELEMENT" : "GUIDE";
  return std::string(keyword) + ": " + call_source(statement.call);
}

std::string to_source(const std::vector<GogStatement>& statements) {
  std::string out;
  for (const auto& statement : statements) {
    out += to_source(statement);
    out += '\n';
  }
  return out;
}

}  // namespace dvp::gog
