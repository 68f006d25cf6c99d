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

#include <cstdint>
#include <string>
#include <string_view>

#include "dvp/wire.hpp"

namespace dvp::bridge {

/// Evaluation side of a Scientific Computing Environment.
class SceBackend {
 public:
  virtual ~SceBackend() = default;
  virtual std::string name() const = 0;
  /// Returns the result document; throws dvp::Error on failure.
  virtual Json evaluate(std::string_view expression) = 0;
};

/// Integer arithmetic over + - * and parentheses. Anything else, including
/// overflow, is Error(kUnsupported).
class MockSceBackend final : public SceBackend {
 public:
  std::string name() const override { return "mock"; }
  Json evaluate(std::string_view expression) override;
};

std::int64_t evaluate_integer_expression(std::string_view expression);

}  // namespace dvp::bridge
