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

#include "dvp/parcoords/duality.hpp"

#include <cmath>

#include "dvp/error.hpp"

namespace dvp::parcoords {

DualPoint line_to_dual_point(const CartesianLine& line, double spacing) {
  if (!(spacing > 0.0)) throw Error(ErrorKind::kInvalidArgument, "axis spacing must be positive");
  if (!std::isfinite(line.slope) || !std::isfinite(line.intercept)) {
    throw Error(ErrorKind::kInvalidArgument, "line coefficients must be finite");
  }
  const double denom = 1.0 - line.slope;
  if (denom == 0.0) {
    const double norm = std::hypot(spacing, line.intercept);
    return IdealPoint{spacing / norm, line.intercept / norm};
  }
  return stats::Point2{spacing / denom, line.intercept / denom};
}

}  // namespace dvp::parcoords
