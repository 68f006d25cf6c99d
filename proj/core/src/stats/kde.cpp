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

#include <algorithm>
#include <cmath>

#include "dvp/error.hpp"

namespace dvp::stats {

void KdeSpec::validate() const {
  if (!(hx > 0.0) || !(hy > 0.0) || !std::isfinite(hx) || !std::isfinite(hy)) {
    throw Error(ErrorKind::kInvalidArgument, "kde bandwidths must be positive");
  }
  if (gx < 2 || gy < 2) {
    throw Error(ErrorKind::kInvalidArgument, "kde grid needs at least 2 points per dimension");
  }
}

DensityGrid::DensityGrid(std::size_t nx, std::size_t ny, Range x, Range y)
    : nx_(nx), ny_(ny), x_(x), y_(y), values_(nx * ny, 0.0) {
  if (nx < 2 || ny < 2) {
    throw Error(ErrorKind::kInvalidArgument, "grid needs at least 2x2 points");
  }
  if (!(x.lo < x.hi) || !(y.lo < y.hi)) {
    throw Error(ErrorKind::kInvalidArgument, "grid domain must have lo < hi");
  }
}

DensityGrid DensityGrid::from_rows(const std::vector<std::vector<double>>& rows, Range x,
                                   Range y) {
  const std::size_t ny = rows.size();
  const std::size_t nx = ny ? rows.front().size() : 0;
  DensityGrid grid(nx, ny, x, y);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    if (rows[iy].size() != nx) {
      throw Error(ErrorKind::kInvalidArgument, "grid rows must have equal length");
    }
    for (std::size_t ix = 0; ix < nx; ++ix) grid.at(ix, iy) = rows[iy][ix];
  }
  return grid;
}

double DensityGrid::x_at(std::size_t ix) const {
  return ix + 1 == nx_ ? x_.hi : x_.lo + static_cast<double>(ix) * dx();
}

double DensityGrid::y_at(std::size_t iy) const {
  return iy + 1 == ny_ ? y_.hi : y_.lo + static_cast<double>(iy) * dy();
}

double DensityGrid::max_value() const { return *std::max_element(values_.begin(), values_.end()); }
double DensityGrid::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double epanechnikov(double u) { return std::abs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0; }

DensityGrid epanechnikov_kde_2d(std::span<const Point2> points, const KdeSpec& spec, Range x,
                                Range y) {
  spec.validate();
  if (points.empty()) throw Error(ErrorKind::kKde, "kernel density needs at least one point");
  DensityGrid grid(spec.gx, spec.gy, x, y);

  const double norm = 1.0 / (static_cast<double>(points.size()) * spec.hx * spec.hy);
  std::vector<double> kx(spec.gx);
  for (const Point2& p : points) {
    // Only lattice nodes inside the kernel support contribute.
    auto lo_x = static_cast<long>(std::floor((p.x - spec.hx - x.lo) / grid.dx()));
    auto hi_x = static_cast<long>(std::ceil((p.x + spec.hx - x.lo) / grid.dx()));
    auto lo_y = static_cast<long>(std::floor((p.y - spec.hy - y.lo) / grid.dy()));
    auto hi_y = static_cast<long>(std::ceil((p.y + spec.hy - y.lo) / grid.dy()));
    const long max_x = static_cast<long>(spec.gx) - 1;
    const long max_y = static_cast<long>(spec.gy) - 1;
    lo_x = std::clamp(lo_x, 0L, max_x);
    hi_x = std::clamp(hi_x, 0L, max_x);
    lo_y = std::clamp(lo_y, 0L, max_y);
    hi_y = std::clamp(hi_y, 0L, max_y);
    for (long ix = lo_x; ix <= hi_x; ++ix) {
      kx[ix] = epanechnikov((grid.x_at(ix) - p.x) / spec.hx);
    }
    for (long iy = lo_y; iy <= hi_y; ++iy) {
      const double ky = epanechnikov((grid.y_at(iy) - p.y) / spec.hy);
      if (ky == 0.0) continue;
      for (long ix = lo_x; ix <= hi_x; ++ix) grid.at(ix, iy) += kx[ix] * ky;
    }
  }
  for (std::size_t iy = 0; iy < spec.gy; ++iy) {
    for (std::size_t ix = 0; ix < spec.gx; ++ix) grid.at(ix, iy) *= norm;
  }
  return grid;
}

double silverman_bandwidth(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 2) return 1.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sigma = std::sqrt(ss / static_cast<double>(n - 1));
  if (!(sigma > 0.0)) return 1.0;
  return 1.06 * sigma * std::pow(static_cast<double>(n), -0.2);
}

KdePlan default_kde_plan(std::span<const Point2> points, double hx, double hy) {
  if (points.empty()) throw Error(ErrorKind::kKde, "kernel density needs at least one point");
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& p : points) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  KdePlan plan;
  plan.spec.hx = hx > 0.0 ? hx : silverman_bandwidth(xs);
  plan.spec.hy = hy > 0.0 ? hy : silverman_bandwidth(ys);
  auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
  auto [ymin, ymax] = std::minmax_element(ys.begin(), ys.end());
  plan.x = {*xmin - plan.spec.hx, *xmax + plan.spec.hx};
  plan.y = {*ymin - plan.spec.hy, *ymax + plan.spec.hy};
  return plan;
}

}  // namespace dvp::stats
