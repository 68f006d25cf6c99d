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

#include "dvp/parcoords/interval_tree.hpp"

#include <algorithm>

namespace dvp::parcoords {

IntervalTree::IntervalTree(std::vector<Interval> intervals) {
  by_lo_.reserve(intervals.size());
  by_hi_.reserve(intervals.size());
  root_ = build(intervals);
}

std::size_t IntervalTree::build(std::vector<Interval>& items) {
  if (items.empty()) return kNone;

  std::vector<double> endpoints;
  endpoints.reserve(items.size() * 2);
  for (const auto& it : items) {
    endpoints.push_back(it.lo);
    endpoints.push_back(it.hi);
  }
  auto mid = endpoints.begin() + static_cast<long>(endpoints.size() / 2);
  std::nth_element(endpoints.begin(), mid, endpoints.end());
  const double center = *mid;

  // The center is an endpoint of some interval, so the middle set is never
  // empty and both sides shrink.
  std::vector<Interval> left;
  std::vector<Interval> right;
  std::vector<Interval> here;
  for (const auto& it : items) {
    if (it.hi < center) {
      left.push_back(it);
    } else if (it.lo > center) {
      right.push_back(it);
    } else {
      here.push_back(it);
    }
  }
  items.clear();
  items.shrink_to_fit();

  const std::size_t index = nodes_.size();
  nodes_.push_back(Node{center, by_lo_.size(), by_lo_.size() + here.size()});

  std::sort(here.begin(), here.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  by_lo_.insert(by_lo_.end(), here.begin(), here.end());
  std::sort(here.begin(), here.end(),
            [](const Interval& x, const Interval& y) { return x.hi > y.hi; });
  by_hi_.insert(by_hi_.end(), here.begin(), here.end());

  const std::size_t l = build(left);
  const std::size_t r = build(right);
  nodes_[index].left = l;
  nodes_[index].right = r;
  return index;
}

}  // namespace dvp::parcoords
