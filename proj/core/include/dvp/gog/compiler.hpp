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

#include "dvp/data_model.hpp"
#include "dvp/gog/ast.hpp"
#include "dvp/gog/scene.hpp"

namespace dvp::gog {

/// Binds statements to \p data and evaluates statistics.
///
/// Identifiers resolve first against the builtins (zero, dim, hue), then
/// against column names. Position bindings must name quantitative columns.
/// Throws Error(kCompile) for unknown columns, geometries, guides, aesthetics
/// and type mismatches; Error(kKde) when a density has no complete rows.
SceneGraph compile(const std::vector<GogStatement>& statements, const DataSource& data);

/// parse() followed by compile().
SceneGraph compile_script(std::string_view source, const DataSource& data);

}  // namespace dvp::gog
