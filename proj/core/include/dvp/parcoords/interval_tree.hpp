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
#include <vector>

namespace dvp::parcoords {

/// Static centered interval tree answering "which intervals overlap [a, b]"
/// in O(log n + k). Endpoints are inclusive.
class IntervalTree {
 public:
  struct Interval {
    double lo;
    double hi;
    std::size_t id;
  };

  IntervalTree() = default;
  explicit IntervalTree(std::vector<Interval> intervals);

  std::size_t size() const noexcept { return by_lo_.size(); }

  /// Calls visit(id) once for each overlapping interval; returns the count.
  template <class Visit>
  std::size_t query(double a, double b, Visit&& visit) const;

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Node {
    double center;
    std::size_t begin;  // slice of by_lo_ / by_hi_
    std::size_t end;
    std::size_t left = kNone;
    std::size_t right = kNone;
  };

  std::size_t build(std::vector<Interval>& items);

  std::vector<Node> nodes_;
  std::vector<Interval> by_lo_;  // ascending lo within each node slice
  std::vector<Interval> by_hi_;  // descending hi within each node slice
  std::size_t root_ = kNone;
};

template <class Visit>
std::size_t IntervalTree::query(double a, double b, Visit&& visit) const {
  std::size_t reported = 0;
  if (root_ == kNone || a > b) return 0;
  std::size_t stack[128];
  std::size_t top = 0;
  stack[top++] = root_;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (b < node.center) {
      for (std::size_t i = node.begin; i < node.end && by_lo_[i].lo <= b; ++i) {
        visit(by_lo_[i].id);
        ++reported;
      }
      if (node.left != kNone) stack[top++] = node.left;
    } else if (a > node.center) {
      for (std::size_t i = node.begin; i < node.end && by_hi_[i].hi >= a; ++i) {
        visit(by_hi_[i].id);
        ++reported;
      }
      if (node.right != kNone) stack[top++] = node.right;
    } else {
      for (std::size_t i = node.begin; i < node.end; ++i) {
        visit(by_lo_[i].id);
        ++reported;
      }
      if (node.left != kNone) stack[top++] = node.left;
      if (node.right != kNone) stack[top++] = node.right;
    }
  }
  return reported;
}

}  // namespace dvp::parcoords
