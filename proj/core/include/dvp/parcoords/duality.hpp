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

#include <variant>

#include "dvp/stats/kde.hpp"

namespace dvp::parcoords {

/// y = slope * x + intercept in Cartesian coordinates.
struct CartesianLine {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Point at infinity in direction (dx, dy); the dual of a slope-1 line.
struct IdealPoint {
  double dx = 0.0;
  double dy = 0.0;
  bool operator==(const IdealPoint&) const = default;
};

using DualPoint = std::variant<stats::Point2, IdealPoint>;

/// With the first axis at x = 0 and the second at x = spacing, each point
/// (u, slope*u + intercept) on the line draws the segment (0,u)-(spacing, slope*u + intercept).
/// For slope != 1 every such segment passes through
/// (spacing / (1 - slope), intercept / (1 - slope)); for slope == 1 they are parallel.
DualPoint line_to_dual_point(const CartesianLine& line, double spacing);

}  // namespace dvp::parcoords
