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

#include "dvp/stats/contour.hpp"

#include <cmath>
#include <unordered_map>

#include "dvp/error.hpp"

namespace dvp::stats {
namespace {

struct Crossing {
  std::size_t edge;
  Point2 at;
};

struct Segment {
  Crossing a;
  Crossing b;
};

class LevelTracer {
 public:
  LevelTracer(const DensityGrid& grid, double level) : grid_(grid), level_(level) {}

  std::vector<ContourLine> trace() {
    collect_segments();
    return chain();
  }

 private:
  // Horizontal edge (ix,iy)-(ix+1,iy) is even, vertical edge (ix,iy)-(ix,iy+1) is odd.
  std::size_t h_edge(std::size_t ix, std::size_t iy) const { return 2 * (iy * grid_.nx() + ix); }
  std::size_t v_edge(std::size_t ix, std::size_t iy) const {
    return 2 * (iy * grid_.nx() + ix) + 1;
  }

  Crossing h_cross(std::size_t ix, std::size_t iy) const {
    const double a = grid_.at(ix, iy);
    const double b = grid_.at(ix + 1, iy);
    const double t = (level_ - a) / (b - a);
    const double x0 = grid_.x_at(ix);
    const double x1 = grid_.x_at(ix + 1);
    return {h_edge(ix, iy), {x0 + t * (x1 - x0), grid_.y_at(iy)}};
  }

  Crossing v_cross(std::size_t ix, std::size_t iy) const {
    const double a = grid_.at(ix, iy);
    const double b = grid_.at(ix, iy + 1);
    const double t = (level_ - a) / (b - a);
    const double y0 = grid_.y_at(iy);
    const double y1 = grid_.y_at(iy + 1);
    return {v_edge(ix, iy), {grid_.x_at(ix), y0 + t * (y1 - y0)}};
  }

  void collect_segments() {
    for (std::size_t iy = 0; iy + 1 < grid_.ny(); ++iy) {
      for (std::size_t ix = 0; ix + 1 < grid_.nx(); ++ix) {
        const double v00 = grid_.at(ix, iy);
        const double v10 = grid_.at(ix + 1, iy);
        const double v11 = grid_.at(ix + 1, iy + 1);
        const double v01 = grid_.at(ix, iy + 1);
        const int code = (v00 >= level_ ? 1 : 0) | (v10 >= level_ ? 2 : 0) |
                         (v11 >= level_ ? 4 : 0) | (v01 >= level_ ? 8 : 0);
        if (code == 0 || code == 15) continue;

        auto bottom = [&] { return h_cross(ix, iy); };
        auto top = [&] { return h_cross(ix, iy + 1); };
        auto left = [&] { return v_cross(ix, iy); };
        auto right = [&] { return v_cross(ix + 1, iy); };
        auto add = [&](Crossing a, Crossing b) { segments_.push_back({a, b}); };

        switch (code) {
          case 1: case 14: add(left(), bottom()); break;
          case 2: case 13: add(bottom(), right()); break;
          case 3: case 12: add(left(), right()); break;
          case 4: case 11: add(right(), top()); break;
          case 6: case 9: add(bottom(), top()); break;
          case 7: case 8: add(left(), top()); break;
          case 5: case 10: {
            const bool centre_above = 0.25 * (v00 + v10 + v11 + v01) >= level_;
            // code 5: v00 and v11 above. Connected centre joins them.
            if ((code == 5) == centre_above) {
              add(left(), top());
              add(bottom(), right());
            } else {
              add(left(), bottom());
              add(right(), top());
            }
            break;
          }
          default: break;
        }
      }
    }
  }

  std::vector<ContourLine> chain() {
    std::unordered_map<std::size_t, std::vector<std::size_t>> by_edge;
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      by_edge[segments_[s].a.edge].push_back(s);
      by_edge[segments_[s].b.edge].push_back(s);
    }
    std::vector<bool> used(segments_.size(), false);
    std::vector<ContourLine> lines;

    auto walk = [&](std::size_t start, std::size_t entry_edge) {
      ContourLine line;
      std::size_t current = start;
      std::size_t edge = entry_edge;
      const Segment& first = segments_[start];
      line.vertices.push_back(first.a.edge == edge ? first.a.at : first.b.at);
      while (true) {
        used[current] = true;
        const Segment& seg = segments_[current];
        const Crossing& exit = seg.a.edge == edge ? seg.b : seg.a;
        line.vertices.push_back(exit.at);
        edge = exit.edge;
        std::size_t next = segments_.size();
        for (std::size_t candidate : by_edge[edge]) {
          if (!used[candidate]) {
            next = candidate;
            break;
          }
        }
        if (next == segments_.size()) break;
        current = next;
      }
      line.closed = edge == entry_edge && line.vertices.size() > 2;
      lines.push_back(std::move(line));
    };

    // Open lines start at edges touched by a single segment (grid boundary).
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      if (used[s]) continue;
      for (const Crossing* end : {&segments_[s].a, &segments_[s].b}) {
        if (by_edge[end->edge].size() == 1) {
          walk(s, end->edge);
          break;
        }
      }
    }
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      if (!used[s]) walk(s, segments_[s].a.edge);
    }
    return lines;
  }

  const DensityGrid& grid_;
  double level_;
  std::vector<Segment> segments_;
};

}  // namespace

std::vector<ContourLevel> extract_contours(const DensityGrid& grid,
                                           std::span<const double> levels) {
  for (double v : grid.values()) {
    if (!std::isfinite(v)) throw Error(ErrorKind::kInvalidArgument, "grid has non-finite values");
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!std::isfinite(levels[i]) || (i > 0 && !(levels[i] > levels[i - 1]))) {
      throw Error(ErrorKind::kInvalidArgument, "contour levels must be strictly increasing");
    }
  }
  const double lo = grid.min_value();
  const double hi = grid.max_value();
  std::vector<ContourLevel> out;
  out.reserve(levels.size());
  for (double level : levels) {
    ContourLevel result{level, {}};
    if (level > lo && level <= hi) result.lines = LevelTracer(grid, level).trace();
    out.push_back(std::move(result));
  }
  return out;
}

std::vector<double> default_levels(const DensityGrid& grid) {
  const double peak = grid.max_value();
  std::vector<double> levels;
  if (!(peak > 0.0)) return levels;
  for (int k = 0; k < 5; ++k) levels.push_back(peak * (0.1 + 0.2 * k));
  return levels;
}

}  // namespace dvp::stats
