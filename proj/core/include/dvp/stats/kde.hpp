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

#include <cstddef>
#include <span>
#include <vector>

namespace dvp::stats {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
  double span() const { return hi - lo; }
  bool operator==(const Range&) const = default;
};

/// Product-kernel density settings. Bandwidths must be positive and each
/// grid dimension at least 2.
struct KdeSpec {
  double hx = 1.0;
  double hy = 1.0;
  std::size_t gx = 64;
  std::size_t gy = 64;

  void validate() const;
};

/// Regular nx x ny lattice over [x.lo, x.hi] x [y.lo, y.hi], endpoints included.
class DensityGrid {
 public:
  DensityGrid(std::size_t nx, std::size_t ny, Range x, Range y);

  /// Builds a grid from image-style rows: rows[iy][ix].
  static DensityGrid from_rows(const std::vector<std::vector<double>>& rows, Range x = {0, 1},
                               Range y = {0, 1});

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  Range x_range() const noexcept { return x_; }
  Range y_range() const noexcept { return y_; }

  double x_at(std::size_t ix) const;
  double y_at(std::size_t iy) const;
  double dx() const { return x_.span() / static_cast<double>(nx_ - 1); }
  double dy() const { return y_.span() / static_cast<double>(ny_ - 1); }

  double& at(std::size_t ix, std::size_t iy) { return values_[iy * nx_ + ix]; }
  double at(std::size_t ix, std::size_t iy) const { return values_[iy * nx_ + ix]; }

  std::span<const double> values() const noexcept { return values_; }
  double max_value() const;
  double min_value() const;

 private:
  std::size_t nx_;
  std::size_t ny_;
  Range x_;
  Range y_;
  std::vector<double> values_;
};

/// K(u) = 0.75 (1 - u^2) on |u| <= 1, zero elsewhere.
double epanechnikov(double u);

/// grid(ix, iy) = 1/(n hx hy) * sum_k K((x_ix - x_k)/hx) K((y_iy - y_k)/hy).
/// Throws Error(kKde) on an empty sample and Error(kInvalidArgument) on a bad spec.
DensityGrid epanechnikov_kde_2d(std::span<const Point2> points, const KdeSpec& spec, Range x,
                                Range y);

/// Rule-of-thumb bandwidth 1.06 * sigma * n^(-1/5); 1.0 when sigma is zero.
double silverman_bandwidth(std::span<const double> values);

struct KdePlan {
  KdeSpec spec;
  Range x;
  Range y;
};

/// Default evaluation: Silverman bandwidths, 64x64 grid over the bounding box
/// padded by the bandwidth on each side. Explicit bandwidths override the rule.
KdePlan default_kde_plan(std::span<const Point2> points, double hx = 0.0, double hy = 0.0);

}  // namespace dvp::stats
