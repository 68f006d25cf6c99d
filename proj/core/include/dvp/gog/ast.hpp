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

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace dvp::gog {

/// Owning pointer with value semantics, for recursive AST nodes.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }

 private:
  std::unique_ptr<T> ptr_;
};

struct Expr;

struct Identifier {
  std::string name;
  bool operator==(const Identifier&) const = default;
};

struct StringLit {
  std::string value;
  bool operator==(const StringLit&) const = default;
};

struct NumberLit {
  double value = 0.0;
  bool operator==(const NumberLit&) const = default;
};

/// A literal coordinate pair such as (30,30).
struct TupleLit {
  double first = 0.0;
  double second = 0.0;
  bool operator==(const TupleLit&) const = default;
};

struct CallExpr {
  std::vector<std::string> path;
  std::vector<Expr> args;

  /// Path joined with '.', e.g. "smooth.density.kernel.epanechnikov.joint".
  std::string dotted() const;
  /// First path segment; the aesthetic or geometry family name.
  const std::string& head() const { return path.front(); }
};

/// The binary "*" operator binding two data dimensions.
struct CrossExpr {
  Box<Expr> left;
  Box<Expr> right;
};

struct Expr {
  std::variant<CallExpr, Identifier, StringLit, NumberLit, TupleLit, CrossExpr> node;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
};

bool operator==(const Expr& a, const Expr& b);
bool operator==(const CallExpr& a, const CallExpr& b);
bool operator==(const CrossExpr& a, const CrossExpr& b);

enum class StatementKind { kElement, kGuide };

struct GogStatement {
  StatementKind kind = StatementKind::kElement;
  CallExpr call;
  /// Source line of the keyword; ignored by equality.
  std::size_t line = 0;

  friend bool operator==(const GogStatement& a, const GogStatement& b) {
    return a.kind == b.kind && a.call == b.call;
  }
};

/// Canonical source text. Re-parsing the output yields an equal AST.
std::string to_source(const Expr& expr);
std::string to_source(const GogStatement& statement);
std::string to_source(const std::vector<GogStatement>& statements);

}  // namespace dvp::gog
