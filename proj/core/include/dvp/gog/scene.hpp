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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvp/stats/contour.hpp"
#include "dvp/stats/kde.hpp"

namespace dvp::gog {

enum class Geom { kPoint, kContour, kPolyline };
enum class Aesthetic { kPosition, kSize, kLabel, kColor };
enum class GuideKind { kAxis, kFormLine };

std::string_view to_string(Geom geom);
std::string_view to_string(Aesthetic aesthetic);

/// Mark radius used for size(zero).
inline constexpr double kMinMarkRadius = 1.5;
inline constexpr double kDefaultMarkRadius = 3.0;
inline constexpr double kMaxMarkRadius = 8.0;

/// What an aesthetic is bound to, kept in canonical source form plus the
/// resolved data columns.
struct AestheticBinding {
  std::string expression;
  std::vector<std::string> columns;
};

/// One data row placed in data coordinates. Rows with a missing position
/// coordinate keep their slot with present == false.
struct Mark {
  std::size_t row = 0;
  bool present = true;
  double x = 0.0;
  double y = 0.0;
  double radius = kDefaultMarkRadius;
  std::optional<std::string> label;
  /// Hue angle in degrees, when a color aesthetic maps this mark.
  std::optional<double> hue;
};

struct ContourPayload {
  stats::KdeSpec spec;
  stats::Range x;
  stats::Range y;
  std::vector<stats::ContourLevel> levels;
  /// One hue per level in ascending level order; empty without color.hue().
  std::vector<double> hues;
};

struct GeomElement {
  Geom geom = Geom::kPoint;
  std::map<Aesthetic, AestheticBinding> aesthetics;
  std::vector<Mark> marks;
  std::optional<ContourPayload> contours;
};

struct Guide {
  GuideKind guide = GuideKind::kAxis;
  /// 1 = horizontal axis, 2 = vertical axis. Unused for form.line.
  int dim = 0;
  std::array<stats::Point2, 2> endpoints{};
  std::string label;
};

struct SceneGraph {
  std::string data_ref;
  std::vector<GeomElement> elements;
  std::vector<Guide> guides;
  std::string x_dim;
  std::string y_dim;
  stats::Range x_domain;
  stats::Range y_domain;
};

}  // namespace dvp::gog
