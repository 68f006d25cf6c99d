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

#include "dvp/parcoords/layout.hpp"

#include <cmath>
#include <limits>

#include "dvp/error.hpp"

namespace dvp::parcoords {

AxisLayout::AxisLayout(std::vector<std::string> axes, std::vector<std::size_t> columns,
                       std::vector<AxisRange> ranges, double spacing)
    : axes_(std::move(axes)),
      columns_(std::move(columns)),
      ranges_(std::move(ranges)),
      spacing_(spacing) {}

double AxisLayout::normalize(std::size_t axis, double value) const {
  const AxisRange& r = ranges_.at(axis);
  return (value - r.min) / (r.max - r.min);
}

AxisLayout layout(const DataSource& data, std::vector<std::string> axes, double spacing) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(ErrorKind::kInvalidArgument, "axis spacing must be positive");
  }
  std::vector<std::size_t> columns;
  std::vector<AxisRange> ranges;
  for (const auto& name : axes) {
    auto index = data.column_index(name);
    if (!index) throw Error(ErrorKind::kInvalidArgument, "unknown column " + name);
    const Column& column = data.column(*index);
    if (!column.type().is_quantitative()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "column " + name + " is not quantitative and cannot be an axis");
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : column.values()) {
      if (std::isnan(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo > hi) {
      lo = 0.0;
      hi = 0.0;
    }
    if (lo == hi) {
      ranges.push_back({lo - 0.5, hi + 0.5});
    } else {
      ranges.push_back({lo, hi});
    }
    columns.push_back(*index);
  }
  return AxisLayout(std::move(axes), std::move(columns), std::move(ranges), spacing);
}

bool Polyline::broken() const {
  for (const auto& v : vertices) {
    if (std::isnan(v.y)) return true;
  }
  return false;
}

std::vector<std::vector<stats::Point2>> Polyline::runs() const {
  std::vector<std::vector<stats::Point2>> out;
  std::vector<stats::Point2> current;
  for (const auto& v : vertices) {
    if (std::isnan(v.y)) {
      if (current.size() >= 2) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(v);
    }
  }
  if (current.size() >= 2) out.push_back(std::move(current));
  return out;
}

Polyline row_to_polyline(const AxisLayout& layout, const DataSource& data, std::size_t row) {
  if (row >= data.rows()) {
    throw Error(ErrorKind::kInvalidArgument, "row " + std::to_string(row) + " out of range");
  }
  Polyline line;
  line.vertices.reserve(layout.size());
  for (std::size_t axis = 0; axis < layout.size(); ++axis) {
    double v = data.column(layout.columns()[axis]).values()[row];
    line.vertices.push_back({layout.x_of(axis), layout.normalize(axis, v)});
  }
  return line;
}

std::vector<std::vector<double>> normalize_columns(const AxisLayout& layout,
                                                   const DataSource& data) {
  std::vector<std::vector<double>> out(layout.size());
  for (std::size_t axis = 0; axis < layout.size(); ++axis) {
    auto values = data.column(layout.columns()[axis]).values();
    out[axis].reserve(values.size());
    for (double v : values) out[axis].push_back(layout.normalize(axis, v));
  }
  return out;
}

}  // namespace dvp::parcoords
