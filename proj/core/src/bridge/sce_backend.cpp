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

#include "dvp/bridge/sce_backend.hpp"

#include <cctype>

#include "dvp/error.hpp"

namespace dvp::bridge {
namespace {

class IntegerEvaluator {
 public:
  explicit IntegerEvaluator(std::string_view text) : text_(text) {}

  std::int64_t run() {
    std::int64_t value = sum();
    skip_space();
    if (pos_ != text_.size()) unsupported("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  std::int64_t sum() {
    std::int64_t value = product();
    while (true) {
      skip_space();
      if (peek('+')) {
        ++pos_;
        value = checked(value, product(), '+');
      } else if (peek('-')) {
        ++pos_;
        value = checked(value, product(), '-');
      } else {
        return value;
      }
    }
  }

  std::int64_t product() {
    std::int64_t value = unary();
    while (true) {
      skip_space();
      if (!peek('*')) return value;
      ++pos_;
      value = checked(value, unary(), '*');
    }
  }

  std::int64_t unary() {
    skip_space();
    if (peek('-')) {
      ++pos_;
      return checked(0, unary(), '-');
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    if (peek('(')) {
      ++pos_;
      std::int64_t value = sum();
      skip_space();
      if (!peek(')')) unsupported("missing ')'");
      ++pos_;
      return value;
    }
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::int64_t value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = checked(checked(value, 10, '*'), text_[pos_] - '0', '+');
        ++pos_;
      }
      return value;
    }
    if (pos_ >= text_.size()) unsupported("unexpected end of expression");
    unsupported("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

  static std::int64_t checked(std::int64_t a, std::int64_t b, char op) {
    std::int64_t out = 0;
    bool overflow = false;
    switch (op) {
      case '+': overflow = __builtin_add_overflow(a, b, &out); break;
      case '-': overflow = __builtin_sub_overflow(a, b, &out); break;
      default: overflow = __builtin_mul_overflow(a, b, &out); break;
    }
    if (overflow) unsupported("integer overflow");
    return out;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  [[noreturn]] static void unsupported(const std::string& message) {
    throw Error(ErrorKind::kUnsupported,
                "mock SCE only evaluates integer + - * expressions: " + message);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::int64_t evaluate_integer_expression(std::string_view expression) {
  return IntegerEvaluator(expression).run();
}

Json MockSceBackend::evaluate(std::string_view expression) {
  return evaluate_integer_expression(expression);
}

}  // namespace dvp::bridge
