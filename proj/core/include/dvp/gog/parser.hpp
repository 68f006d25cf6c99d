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

#include <string_view>
#include <vector>

#include "dvp/gog/ast.hpp"

namespace dvp::gog {

/// Grammar:
///   script    := { statement }
///   statement := ("ELEMENT" | "GUIDE") ":" call
///   call      := ident { "." ident } "(" [ expr { "," expr } ] ")"
///   expr      := primary [ "*" primary ]
///   primary   := call | ident | string | number | "(" number "," number ")"
///
/// Throws SyntaxError(kLex) from the lexer and SyntaxError(kParse) with the
/// expected-token set otherwise. DATA, SCALE and COORD are reserved keywords
/// and rejected here.
std::vector<GogStatement> parse(std::string_view source);

}  // namespace dvp::gog
