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

#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "dvp/data_model.hpp"
#include "dvp/parcoords/interval_tree.hpp"
#include "dvp/parcoords/layout.hpp"

namespace dvp::parcoords {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Vertical probe at layout x-coordinate \p x over normalized [ylo, yhi].
struct BrushProbe {
  double x = 0.0;
  double ylo = 0.0;
  double yhi = 0.0;
};

struct QueryStats {
  /// Rows that survived the interval-tree prefilter and got the exact test.
  std::size_t candidates = 0;
};

/// Per adjacent axis pair (i, i+1), built over rows present on both axes.
struct PairIndex {
  /// Rows ordered by normalized y on the left axis, then on the right axis.
  std::vector<std::size_t> by_left;
  std::vector<std::size_t> by_right;
  /// Bounding interval [min(y_i, y_i+1), max(y_i, y_i+1)] per row.
  IntervalTree bounds;
  /// (slope, row) ascending, slope = (y_i+1 - y_i) / spacing.
  std::vector<std::pair<double, std::size_t>> slopes;
};

/// Immutable layout + normalized data + indexes for one dataset version.
class ParcoordsModel {
 public:
  ParcoordsModel(std::shared_ptr<const DataSource> data, std::vector<std::string> axes,
                 double spacing);

  const DataSource& data() const noexcept { return *data_; }
  std::shared_ptr<const DataSource> data_ptr() const noexcept { return data_; }
  const AxisLayout& layout() const noexcept { return layout_; }
  /// Normalized y for every row on \p axis (NaN for missing).
  const std::vector<double>& normalized(std::size_t axis) const { return normalized_.at(axis); }
  const PairIndex& pair(std::size_t i) const { return pairs_.at(i); }

  /// Rows with lo <= value <= hi on \p axis, in data units; missing excluded.
  RowIndexSet axis_interval_query(std::size_t axis, Interval interval) const;
  /// Rows whose segment between axes i and i+1 crosses the probe.
  RowIndexSet brush_segment_query(std::size_t pair, BrushProbe probe,
                                  QueryStats* stats = nullptr) const;
  /// Rows with lo <= (y_i+1 - y_i) / spacing <= hi in normalized units.
  RowIndexSet slope_query(std::size_t pair, Interval slopes) const;

 private:
  void check_pair(std::size_t pair) const;

  std::shared_ptr<const DataSource> data_;
  AxisLayout layout_;
  std::vector<std::vector<double>> normalized_;
  std::vector<std::vector<std::pair<double, std::size_t>>> sorted_values_;
  std::vector<PairIndex> pairs_;
};

/// Pearson r over the selected rows (rows missing either value are skipped).
/// Throws Error(kQuery) with fewer than two usable rows or zero variance.
double selection_correlation(const DataSource& data, const RowIndexSet& rows,
                             const std::string& col_a, const std::string& col_b);

/// Holds the current model. A swap builds a fresh model and publishes it;
/// readers holding the previous snapshot finish on it.
class ParcoordsView {
 public:
  ParcoordsView(std::shared_ptr<const DataSource> data, std::vector<std::string> axes,
                double spacing);

  std::shared_ptr<const ParcoordsModel> snapshot() const;
  void swap_data(std::shared_ptr<const DataSource> data);
  std::uint64_t version() const;

 private:
  mutable std::mutex mutex_;
  std::shared_ptr<const ParcoordsModel> current_;
  std::vector<std::string> axes_;
  double spacing_;
  std::uint64_t version_ = 0;
};

}  // namespace dvp::parcoords
