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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dvp/error.hpp"

namespace dvp::parcoords {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::shared_ptr<const DataSource> random_table(std::size_t n, std::size_t p, std::uint64_t seed,
                                               double missing_rate = 0.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  std::bernoulli_distribution missing(missing_rate);
  std::vector<Column> columns;
  for (std::size_t c = 0; c < p; ++c) {
    std::vector<double> v(n);
    for (auto& x : v) x = missing(rng) ? std::nan("") : std::round(u(rng) * 100) / 100;
    columns.push_back(Column::quantitative("v" + std::to_string(c), std::move(v)));
  }
  return std::make_shared<const DataSource>("r", std::move(columns));
}

std::vector<std::string> all_axes(const DataSource& d) {
  std::vector<std::string> out;
  for (const auto& c : d.columns()) out.push_back(c.name());
  return out;
}

/// Per-axis min/max normalization over present values, written out here.
double norm(const DataSource& d, std::size_t col, std::size_t row) {
  const auto v = d.column(col).values();
  double lo = kInf;
  double hi = -kInf;
  for (double x : v) {
    if (std::isnan(x)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  return (v[row] - lo) / (hi - lo);
}

struct Brute {
  const DataSource& d;
  double spacing;
  std::vector<std::vector<double>> y;

  Brute(const DataSource& data, double s) : d(data), spacing(s), y(data.cols()) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      for (std::size_t r = 0; r < d.rows(); ++r) y[c].push_back(norm(d, c, r));
    }
  }

  std::vector<std::size_t> axis(std::size_t c, double lo, double hi) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < d.rows(); ++r) {
      const double v = d.column(c).values()[r];
      if (!std::isnan(v) && lo <= v && v <= hi) out.push_back(r);
    }
    return out;
  }

  std::vector<std::size_t> brush(std::size_t i, double x, double ylo, double yhi) const {
    std::vector<std::size_t> out;
    const double t = (x - static_cast<double>(i) * spacing) / spacing;
    for (std::size_t r = 0; r < d.rows(); ++r) {
      if (std::isnan(y[i][r]) || std::isnan(y[i + 1][r])) continue;
      const double at = y[i][r] + t * (y[i + 1][r] - y[i][r]);
      if (ylo <= at && at <= yhi) out.push_back(r);
    }
    return out;
  }

  std::vector<std::size_t> slope(std::size_t i, double lo, double hi) const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < d.rows(); ++r) {
      if (std::isnan(y[i][r]) || std::isnan(y[i + 1][r])) continue;
      const double s = (y[i + 1][r] - y[i][r]) / spacing;
      if (lo <= s && s <= hi) out.push_back(r);
    }
    return out;
  }
};

TEST(AxisIntervalQuery, FullRangeAndBelowRange) {
  const auto d = random_table(200, 3, 1, 0.1);
  const ParcoordsModel model(d, all_axes(*d), 1.0);
  const auto& range = model.layout().ranges()[1];
  const auto brute = Brute(*d, 1.0);
  EXPECT_EQ(model.axis_interval_query(1, {range.min, range.max}).rows(),
            brute.axis(1, -kInf, kInf));
  EXPECT_TRUE(model.axis_interval_query(1, {range.min - 10, range.min - 1}).empty());
}

TEST(AxisIntervalQuery, MatchesBruteForceWithInclusiveBounds) {
  const auto d = random_table(1000, 4, 2, 0.05);
  const ParcoordsModel model(d, all_axes(*d), 1.0);
  const Brute brute(*d, 1.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 105);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t axis = rng() % 4;
    double lo = u(rng);
    double hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    if (trial % 3 == 0) {
      // Land exactly on stored values to exercise the inclusive bounds.
      const double v = d->column(axis).values()[rng() % d->rows()];
      if (!std::isnan(v)) lo = hi = v;
    }
    EXPECT_EQ(model.axis_interval_query(axis, {lo, hi}).rows(), brute.axis(axis, lo, hi));
  }
  EXPECT_THROW(model.axis_interval_query(4, {0, 1}), Error);
  EXPECT_THROW(model.axis_interval_query(0, {2, 1}), Error);
}

TEST(BrushSegmentQuery, FullBandReturnsUnbrokenRows) {
  const auto d = random_table(300, 3, 4, 0.1);
  const ParcoordsModel model(d, all_axes(*d), 2.0);
  const Brute brute(*d, 2.0);
  EXPECT_EQ(model.brush_segment_query(0, {1.0, 0.0, 1.0}).rows(), brute.slope(0, -kInf, kInf));
}

TEST(BrushSegmentQuery, CrossingPairAtTheCrossing) {
  const auto d = std::make_shared<const DataSource>(
      "x", std::vector<Column>{Column::quantitative("a", {0, 1, 0.9}),
                               Column::quantitative("b", {1, 0, 0.95})});
  const ParcoordsModel model(d, {"a", "b"}, 1.0);
  // Row 0 runs 0 -> 1 and row 1 runs 1 -> 0; both pass y = 0.5 at x = 0.5.
  EXPECT_EQ(model.brush_segment_query(0, {0.5, 0.5, 0.5}).rows(),
            (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(model.brush_segment_query(0, {0.25, 0.25, 0.25}).rows(),
            (std::vector<std::size_t>{0}));
}

TEST(BrushSegmentQuery, ProbeMustBeInsideTheBand) {
  const auto d = random_table(10, 3, 5);
  const ParcoordsModel model(d, all_axes(*d), 1.0);
  EXPECT_THROW(model.brush_segment_query(0, {0.0, 0, 1}), Error);
  EXPECT_THROW(model.brush_segment_query(0, {1.0, 0, 1}), Error);
  EXPECT_THROW(model.brush_segment_query(1, {0.5, 0, 1}), Error);
  EXPECT_THROW(model.brush_segment_query(2, {2.5, 0, 1}), Error);
  EXPECT_THROW(model.brush_segment_query(0, {0.5, 0.6, 0.4}), Error);
}

TEST(BrushSegmentQuery, RandomProbesMatchBruteForceAndPrefilter) {
  const auto d = random_table(10000, 9, 6, 0.01);
  const double spacing = 1.5;
  const ParcoordsModel model(d, all_axes(*d), spacing);
  const Brute brute(*d, spacing);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t survivors = 0;
  std::size_t visits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t pair = rng() % 8;
    const double x = (static_cast<double>(pair) + 0.01 + 0.98 * u(rng)) * spacing;
    const double ylo = u(rng);
    const double yhi = std::min(1.0, ylo + 0.1 * u(rng));
    QueryStats stats;
    const auto got = model.brush_segment_query(pair, {x, ylo, yhi}, &stats);
    EXPECT_EQ(got.rows(), brute.brush(pair, x, ylo, yhi));
    EXPECT_LE(stats.candidates, d->rows());
    EXPECT_GE(stats.candidates, got.size());
    survivors += stats.candidates;
    visits += d->rows();
  }
  EXPECT_LT(survivors, visits);
}

TEST(SlopeQuery, UnboundedAndZero) {
  const auto d = std::make_shared<const DataSource>(
      "s", std::vector<Column>{Column::quantitative("a", {0, 1, 0.5, std::nan("")}),
                               Column::quantitative("b", {1, 0, 0.5, 0.3})});
  const ParcoordsModel model(d, {"a", "b"}, 1.0);
  EXPECT_EQ(model.slope_query(0, {-kInf, kInf}).rows(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(model.slope_query(0, {0, 0}).rows(), (std::vector<std::size_t>{2}));
  EXPECT_THROW(model.slope_query(1, {0, 0}), Error);
}

TEST(SlopeQuery, RandomIntervalsMatchBruteForce) {
  const auto d = random_table(2000, 5, 8, 0.02);
  const ParcoordsModel model(d, all_axes(*d), 0.7);
  const Brute brute(*d, 0.7);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.6, 1.6);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t pair = rng() % 4;
    double lo = u(rng);
    double hi = u(rng);
    if (lo > hi) std::swap(lo, hi);
    EXPECT_EQ(model.slope_query(pair, {lo, hi}).rows(), brute.slope(pair, lo, hi));
  }
}

TEST(Correlation, PerfectLines) {
  const DataSource d("c", {Column::quantitative("x", {1, 2, 3, 4}),
                           Column::quantitative("up", {2, 4, 6, 8}),
                           Column::quantitative("down", {-1, -2, -3, -4}),
                           Column::quantitative("flat", {5, 5, 5, 5})});
  const auto all = RowIndexSet::all(4);
  EXPECT_NEAR(selection_correlation(d, all, "x", "up"), 1.0, 1e-15);
  EXPECT_NEAR(selection_correlation(d, all, "x", "down"), -1.0, 1e-15);
  EXPECT_THROW(selection_correlation(d, all, "x", "flat"), Error);
  EXPECT_THROW(selection_correlation(d, RowIndexSet::from_sorted({2}), "x", "up"), Error);
  EXPECT_THROW(selection_correlation(d, all, "x", "nope"), Error);
}

TEST(Correlation, HandPickedPairsMatchTextbookFormula) {
  const std::vector<double> xs{1.0, 2.5, 3.1, 4.7, 6.2};
  const std::vector<double> ys{2.3, 2.9, 4.4, 4.1, 7.0};
  // r = (n Σxy - Σx Σy) / sqrt((n Σx² - (Σx)²)(n Σy² - (Σy)²))
  long double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxy += static_cast<long double>(xs[i]) * ys[i];
    sxx += static_cast<long double>(xs[i]) * xs[i];
    syy += static_cast<long double>(ys[i]) * ys[i];
  }
  const long double n = xs.size();
  const double oracle = static_cast<double>((n * sxy - sx * sy) /
                                            std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
  // Unselected rows and rows with a missing value must not count.
  std::vector<double> xa = xs, ya = ys;
  xa.push_back(100);
  ya.push_back(-100);
  xa.push_back(std::nan(""));
  ya.push_back(1);
  const DataSource d("p", {Column::quantitative("x", xa), Column::quantitative("y", ya)});
  const auto rows = RowIndexSet::from_sorted({0, 1, 2, 3, 4, 6});
  EXPECT_NEAR(selection_correlation(d, rows, "x", "y"), oracle, 1e-12);
}

TEST(ParcoordsView, SwapPublishesFreshIndex) {
  const auto first = random_table(500, 4, 10);
  ParcoordsView view(first, all_axes(*first), 1.0);
  const auto old = view.snapshot();
  EXPECT_EQ(view.version(), 0u);

  std::mt19937_64 rng(11);
  for (int swap = 1; swap <= 5; ++swap) {
    const auto next = random_table(300 + 100 * swap, 4, 20 + swap, 0.05);
    view.swap_data(next);
    EXPECT_EQ(view.version(), static_cast<std::uint64_t>(swap));
    const auto live = view.snapshot();
    const ParcoordsModel fresh(next, all_axes(*next), 1.0);
    for (int probe = 0; probe < 20; ++probe) {
      const std::size_t pair = rng() % 3;
      const double x = pair + 0.5;
      const double ylo = (rng() % 100) / 100.0;
      EXPECT_EQ(live->brush_segment_query(pair, {x, ylo, ylo + 0.2}),
                fresh.brush_segment_query(pair, {x, ylo, ylo + 0.2}));
      EXPECT_EQ(live->slope_query(pair, {-0.3, 0.3}), fresh.slope_query(pair, {-0.3, 0.3}));
      EXPECT_EQ(live->axis_interval_query(pair, {20, 40}), fresh.axis_interval_query(pair, {20, 40}));
    }
  }
  // A reader holding the first snapshot still sees the first dataset.
  EXPECT_EQ(old->data().rows(), 500u);
  EXPECT_EQ(old->axis_interval_query(0, {-kInf, kInf}).size(), 500u);
}

TEST(ParcoordsView, SwapRejectsIncompatibleData) {
  const auto first = random_table(10, 4, 12);
  ParcoordsView view(first, all_axes(*first), 1.0);
  const auto narrow = random_table(10, 2, 13);
  EXPECT_THROW(view.swap_data(narrow), Error);
  EXPECT_EQ(view.snapshot()->data().rows(), 10u);
  EXPECT_EQ(view.version(), 0u);
}

}  // namespace
}  // namespace dvp::parcoords
