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
#include <vector>

#include "dvp/data_model.hpp"
#include "dvp/stats/kde.hpp"

namespace dvp::parcoords {

struct AxisRange {
  double min = 0.0;
  double max = 1.0;
  bool operator==(const AxisRange&) const = default;
};

/// Ordered quantitative axes at x = i * spacing, each with a value range used
/// to normalize onto [0, 1].
class AxisLayout {
 public:
  AxisLayout(std::vector<std::string> axes, std::vector<std::size_t> columns,
             std::vector<AxisRange> ranges, double spacing);

  std::size_t size() const noexcept { return axes_.size(); }
  const std::vector<std::string>& axes() const noexcept { return axes_; }
  /// Column index in the bound DataSource for each axis.
  const std::vector<std::size_t>& columns() const noexcept { return columns_; }
  const std::vector<AxisRange>& ranges() const noexcept { return ranges_; }
  double spacing() const noexcept { return spacing_; }

  double x_of(std::size_t axis) const { return static_cast<double>(axis) * spacing_; }
  /// (value - min) / (max - min); NaN stays NaN.
  double normalize(std::size_t axis, double value) const;

  bool operator==(const AxisLayout&) const = default;

 private:
  std::vector<std::string> axes_;
  std::vector<std::size_t> columns_;
  std::vector<AxisRange> ranges_;
  double spacing_;
};

/// Ranges are the column min/max over present values. A constant (or empty)
/// column gets [v - 0.5, v + 0.5]. Throws Error(kInvalidArgument) for unknown or
/// categorical columns and for spacing <= 0.
AxisLayout layout(const DataSource& data, std::vector<std::string> axes, double spacing);

/// One vertex per axis. A missing value yields a NaN y and breaks the line.
struct Polyline {
  std::vector<stats::Point2> vertices;

  bool broken() const;
  /// Maximal runs of present vertices with at least two points.
  std::vector<std::vector<stats::Point2>> runs() const;
};

Polyline row_to_polyline(const AxisLayout& layout, const DataSource& data, std::size_t row);

/// Per-axis normalized columns (NaN for missing), the working set for queries.
std::vector<std::vector<double>> normalize_columns(const AxisLayout& layout,
                                                   const DataSource& data);

}  // namespace dvp::parcoords
