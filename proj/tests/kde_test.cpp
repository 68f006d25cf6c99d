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

#include "dvp/stats/kde.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dvp/error.hpp"

namespace dvp::stats {
namespace {

/// Direct evaluation of the product-kernel sum, written out independently.
double direct_density(const std::vector<Point2>& pts, double x, double y, double hx, double hy) {
  double sum = 0.0;
  for (const auto& p : pts) {
    const double u = (x - p.x) / hx;
    const double v = (y - p.y) / hy;
    const double ku = std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0;
    const double kv = std::abs(v) <= 1.0 ? 0.75 * (1.0 - v * v) : 0.0;
    sum += ku * kv;
  }
  return sum / (static_cast<double>(pts.size()) * hx * hy);
}

std::vector<Point2> uniform_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point2> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  return pts;
}

TEST(Epanechnikov, KernelShape) {
  EXPECT_EQ(epanechnikov(0.0), 0.75);
  EXPECT_EQ(epanechnikov(1.0), 0.0);
  EXPECT_EQ(epanechnikov(-1.5), 0.0);
  EXPECT_DOUBLE_EQ(epanechnikov(0.5), 0.75 * 0.75);
}

TEST(Kde, SingleSampleAtItsOwnLocation) {
  const std::vector<Point2> one{{0.0, 0.0}};
  const auto grid = epanechnikov_kde_2d(one, {1.0, 1.0, 3, 3}, {-1, 1}, {-1, 1});
  EXPECT_EQ(grid.x_at(1), 0.0);
  EXPECT_EQ(grid.at(1, 1), 0.5625);
  EXPECT_EQ(grid.at(0, 1), 0.0);
  EXPECT_EQ(grid.at(2, 2), 0.0);
}

TEST(Kde, ZeroBeyondSupport) {
  const std::vector<Point2> one{{0.0, 0.0}};
  const auto grid = epanechnikov_kde_2d(one, {1.0, 1.0, 5, 2}, {1.5, 3.5}, {0, 0.5});
  for (double v : grid.values()) EXPECT_EQ(v, 0.0);
}

TEST(Kde, MatchesDirectSum) {
  const auto pts = uniform_points(60, 11);
  const KdeSpec spec{0.3, 0.2, 17, 13};
  const auto grid = epanechnikov_kde_2d(pts, spec, {-0.3, 1.3}, {-0.2, 1.2});
  for (std::size_t iy = 0; iy < grid.ny(); ++iy) {
    for (std::size_t ix = 0; ix < grid.nx(); ++ix) {
      const double expected = direct_density(pts, grid.x_at(ix), grid.y_at(iy), 0.3, 0.2);
      EXPECT_NEAR(grid.at(ix, iy), expected, 1e-12);
      EXPECT_GE(grid.at(ix, iy), 0.0);
    }
  }
}

TEST(Kde, RiemannSumOverPaddedDomainIsOne) {
  const auto pts = uniform_points(500, 5);
  const auto plan = default_kde_plan(pts);
  EXPECT_EQ(plan.spec.gx, 64u);
  EXPECT_EQ(plan.spec.gy, 64u);
  const auto grid = epanechnikov_kde_2d(pts, plan.spec, plan.x, plan.y);
  double sum = 0.0;
  for (double v : grid.values()) sum += v;
  EXPECT_NEAR(sum * grid.dx() * grid.dy(), 1.0, 1e-2);
}

TEST(Kde, PermutationAndDuplicationInvariant) {
  auto pts = uniform_points(80, 9);
  const KdeSpec spec{0.25, 0.25, 20, 20};
  const Range r{-0.25, 1.25};
  const auto base = epanechnikov_kde_2d(pts, spec, r, r);

  std::mt19937 rng(1);
  std::shuffle(pts.begin(), pts.end(), rng);
  const auto shuffled = epanechnikov_kde_2d(pts, spec, r, r);
  auto doubled = pts;
  doubled.insert(doubled.end(), pts.begin(), pts.end());
  const auto twice = epanechnikov_kde_2d(doubled, spec, r, r);

  for (std::size_t i = 0; i < base.values().size(); ++i) {
    EXPECT_NEAR(shuffled.values()[i], base.values()[i], 1e-12);
    EXPECT_NEAR(twice.values()[i], base.values()[i], 1e-12);
  }
}

TEST(Kde, EmptySampleIsAnError) {
  try {
    epanechnikov_kde_2d({}, {}, {0, 1}, {0, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kKde);
  }
  EXPECT_THROW(default_kde_plan({}), Error);
}

TEST(Kde, SpecValidation) {
  EXPECT_THROW((KdeSpec{0.0, 1.0, 8, 8}.validate()), Error);
  EXPECT_THROW((KdeSpec{1.0, -1.0, 8, 8}.validate()), Error);
  EXPECT_THROW((KdeSpec{1.0, 1.0, 1, 8}.validate()), Error);
  EXPECT_NO_THROW((KdeSpec{1.0, 1.0, 2, 2}.validate()));
}

TEST(Silverman, RuleOfThumb) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  // sample sd of 1..5 is sqrt(2.5)
  EXPECT_NEAR(silverman_bandwidth(v), 1.06 * std::sqrt(2.5) * std::pow(5.0, -0.2), 1e-15);
  const std::vector<double> flat{2, 2, 2};
  EXPECT_EQ(silverman_bandwidth(flat), 1.0);
}

TEST(DefaultPlan, PadsBoundingBoxByBandwidth) {
  const std::vector<Point2> pts{{0, 10}, {4, 30}};
  const auto plan = default_kde_plan(pts, 0.5, 2.0);
  EXPECT_EQ(plan.x, (Range{-0.5, 4.5}));
  EXPECT_EQ(plan.y, (Range{8.0, 32.0}));
}

TEST(DensityGrid, FromRowsIsRowMajorInY) {
  const auto g = DensityGrid::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(g.nx(), 3u);
  EXPECT_EQ(g.ny(), 2u);
  EXPECT_EQ(g.at(2, 0), 3.0);
  EXPECT_EQ(g.at(0, 1), 4.0);
  EXPECT_EQ(g.max_value(), 6.0);
  EXPECT_EQ(g.min_value(), 1.0);
}

}  // namespace
}  // namespace dvp::stats
