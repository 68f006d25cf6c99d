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
#include <vector>

#include "dvp/stats/kde.hpp"

namespace dvp::stats {

struct ContourLine {
  std::vector<Point2> vertices;
  /// First and last vertex coincide (the isoline closes inside the grid).
  bool closed = false;
};

struct ContourLevel {
  double level = 0.0;
  std::vector<ContourLine> lines;
};

/// Marching-squares isolines. Every vertex sits on a grid-cell edge at the
/// linearly interpolated crossing. A corner equal to the level counts as
/// above it. Saddles resolve by the cell-centre average.
/// Throws Error(kInvalidArgument) on non-finite grids or non-increasing levels.
std::vector<ContourLevel> extract_contours(const DensityGrid& grid, std::span<const double> levels);

/// Five levels equally spaced from 10% to 90% of the grid maximum.
std::vector<double> default_levels(const DensityGrid& grid);

}  // namespace dvp::stats
