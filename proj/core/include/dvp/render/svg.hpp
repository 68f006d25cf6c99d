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

#include <span>
#include <string>

#include "dvp/data_model.hpp"
#include "dvp/gog/scene.hpp"
#include "dvp/parcoords/layout.hpp"
#include "dvp/selection.hpp"

namespace dvp::render {

struct CanvasSize {
  int width = 640;
  int height = 480;
};

inline constexpr int kMargin = 40;
inline constexpr const char* kNeutralGray = "#808080";

/// SVG 1.1 for a compiled scene. Point marks whose row belongs to a group on
/// the scene's source take the color and alpha of the topmost such group.
/// Throws Error(kRender) for a non-positive canvas.
std::string render_scene(const gog::SceneGraph& scene, CanvasSize size,
                         std::span<const SelectionGroup> groups = {});

/// SVG 1.1 for a parallel-coordinates figure: p vertical axes, ungrouped rows
/// in row order, then each group's rows in z-order.
std::string render_parcoords(const parcoords::AxisLayout& layout, const DataSource& data,
                             std::span<const SelectionGroup> groups, CanvasSize size);

/// Escapes &, <, >, " and ' for text and attribute content.
std::string xml_escape(std::string_view text);

}  // namespace dvp::render
