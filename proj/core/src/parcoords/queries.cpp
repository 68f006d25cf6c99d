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

#include "dvp/parcoords/queries.hpp"

#include <algorithm>
#include <cmath>

#include "dvp/error.hpp"

namespace dvp::parcoords {
namespace {

// Widening applied to the prefilter window; the exact test decides.
constexpr double kPrefilterSlack = 1e-12;

[[noreturn]] void query_error(const std::string& message) {
  throw Error(ErrorKind::kQuery, message);
}

RowIndexSet sorted_rows(std::vector<std::size_t> rows) {
  std::sort(rows.begin(), rows.end());
  return RowIndexSet::from_sorted(std::move(rows));
}

}  // namespace

ParcoordsModel::ParcoordsModel(std::shared_ptr<const DataSource> data,
                               std::vector<std::string> axes, double spacing)
    : data_(std::move(data)),
      layout_(parcoords::layout(*data_, std::move(axes), spacing)),
      normalized_(normalize_columns(layout_, *data_)) {
  const std::size_t n = data_->rows();
  sorted_values_.resize(layout_.size());
  for (std::size_t axis = 0; axis < layout_.size(); ++axis) {
    auto values = data_->column(layout_.columns()[axis]).values();
    auto& sorted = sorted_values_[axis];
    sorted.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!std::isnan(values[r])) sorted.emplace_back(values[r], r);
    }
    std::sort(sorted.begin(), sorted.end());
  }

  const std::size_t pair_count = layout_.size() > 0 ? layout_.size() - 1 : 0;
  pairs_.resize(pair_count);
  for (std::size_t i = 0; i < pair_count; ++i) {
    const auto& left = normalized_[i];
    const auto& right = normalized_[i + 1];
    PairIndex& index = pairs_[i];
    std::vector<IntervalTree::Interval> bounds;
    bounds.reserve(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (std::isnan(left[r]) || std::isnan(right[r])) continue;
      index.by_left.push_back(r);
      bounds.push_back({std::min(left[r], right[r]), std::max(left[r], right[r]), r});
      index.slopes.emplace_back((right[r] - left[r]) / spacing, r);
    }
    index.by_right = index.by_left;
    std::stable_sort(index.by_left.begin(), index.by_left.end(),
                     [&](std::size_t a, std::size_t b) { return left[a] < left[b]; });
    std::stable_sort(index.by_right.begin(), index.by_right.end(),
                     [&](std::size_t a, std::size_t b) { return right[a] < right[b]; });
    std::sort(index.slopes.begin(), index.slopes.end());
    index.bounds = IntervalTree(std::move(bounds));
  }
}

void ParcoordsModel::check_pair(std::size_t pair) const {
  if (pair >= pairs_.size()) {
    query_error("axis pair " + std::to_string(pair) + " out of range (" +
                std::to_string(pairs_.size()) + " pairs)");
  }
}

RowIndexSet ParcoordsModel::axis_interval_query(std::size_t axis, Interval interval) const {
  if (axis >= layout_.size()) query_error("axis " + std::to_string(axis) + " out of range");
  if (interval.lo > interval.hi) query_error("interval lower bound exceeds upper bound");
  const auto& sorted = sorted_values_[axis];
  auto first = std::lower_bound(sorted.begin(), sorted.end(), interval.lo,
                                [](const auto& e, double v) { return e.first < v; });
  auto last = std::upper_bound(sorted.begin(), sorted.end(), interval.hi,
                               [](double v, const auto& e) { return v < e.first; });
  std::vector<std::size_t> rows;
  if (first < last) rows.reserve(static_cast<std::size_t>(last - first));
  for (auto it = first; it < last; ++it) rows.push_back(it->second);
  return sorted_rows(std::move(rows));
}

RowIndexSet ParcoordsModel::brush_segment_query(std::size_t pair, BrushProbe probe,
                                                QueryStats* stats) const {
  check_pair(pair);
  const double d = layout_.spacing();
  const double x0 = static_cast<double>(pair) * d;
  if (!(probe.x > x0 && probe.x < x0 + d)) {
    query_error("probe x must lie strictly between axes " + std::to_string(pair) + " and " +
                std::to_string(pair + 1));
  }
  if (probe.ylo > probe.yhi) query_error("probe interval lower bound exceeds upper bound");
  const auto& left = normalized_[pair];
  const auto& right = normalized_[pair + 1];
  const double t = (probe.x - x0) / d;

  std::vector<std::size_t> rows;
  std::size_t examined = pairs_[pair].bounds.query(
      probe.ylo - kPrefilterSlack, probe.yhi + kPrefilterSlack, [&](std::size_t r) {
        const double y = left[r] + t * (right[r] - left[r]);
        if (probe.ylo <= y && y <= probe.yhi) rows.push_back(r);
      });
  if (stats) stats->candidates += examined;
  return sorted_rows(std::move(rows));
}

RowIndexSet ParcoordsModel::slope_query(std::size_t pair, Interval slopes) const {
  check_pair(pair);
  if (slopes.lo > slopes.hi) query_error("slope interval lower bound exceeds upper bound");
  const auto& sorted = pairs_[pair].slopes;
  auto first = std::lower_bound(sorted.begin(), sorted.end(), slopes.lo,
                                [](const auto& e, double v) { return e.first < v; });
  auto last = std::upper_bound(sorted.begin(), sorted.end(), slopes.hi,
                               [](double v, const auto& e) { return v < e.first; });
  std::vector<std::size_t> rows;
  for (auto it = first; it < last; ++it) rows.push_back(it->second);
  return sorted_rows(std::move(rows));
}

double selection_correlation(const DataSource& data, const RowIndexSet& rows,
                             const std::string& col_a, const std::string& col_b) {
  auto ia = data.column_index(col_a);
  auto ib = data.column_index(col_b);
  if (!ia) query_error("unknown column " + col_a);
  if (!ib) query_error("unknown column " + col_b);
  const Column& a = data.column(*ia);
  const Column& b = data.column(*ib);
  if (!a.type().is_quantitative() || !b.type().is_quantitative()) {
    query_error("correlation needs two quantitative columns");
  }
  rows.check_bounds(data.rows());

  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(rows.size());
  for (std::size_t r : rows) {
    double x = a.values()[r];
    double y = b.values()[r];
    if (!std::isnan(x) && !std::isnan(y)) pairs.emplace_back(x, y);
  }
  if (pairs.size() < 2) query_error("correlation needs at least two selected rows");

  double mx = 0.0;
  double my = 0.0;
  for (auto [x, y] : pairs) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pairs.size());
  my /= static_cast<double>(pairs.size());
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (auto [x, y] : pairs) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0.0 || syy == 0.0) query_error("correlation undefined: zero variance in selection");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ParcoordsView::ParcoordsView(std::shared_ptr<const DataSource> data,
                             std::vector<std::string> axes, double spacing)
    : current_(std::make_shared<const ParcoordsModel>(std::move(data), axes, spacing)),
      axes_(std::move(axes)),
      spacing_(spacing) {}

std::shared_ptr<const ParcoordsModel> ParcoordsView::snapshot() const {
  std::lock_guard lock(mutex_);
  return current_;
}

void ParcoordsView::swap_data(std::shared_ptr<const DataSource> data) {
  auto fresh = std::make_shared<const ParcoordsModel>(std::move(data), axes_, spacing_);
  std::lock_guard lock(mutex_);
  current_ = std::move(fresh);
  ++version_;
}

std::uint64_t ParcoordsView::version() const {
  std::lock_guard lock(mutex_);
  return version_;
}

}  // namespace dvp::parcoords
