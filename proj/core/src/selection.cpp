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

#include "dvp/selection.hpp"

#include <algorithm>
#include <cmath>

#include "dvp/error.hpp"

namespace dvp {

std::string Rgb::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "#";
  for (std::uint8_t c : {r, g, b}) {
    out += kDigits[c >> 4];
    out += kDigits[c & 0xF];
  }
  return out;
}

Rgb Rgb::from_hex(std::string_view text) {
  auto nibble = [&](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw Error(ErrorKind::kInvalidArgument, "bad color '" + std::string(text) + "'");
  };
  if (text.size() != 7 || text[0] != '#') {
    throw Error(ErrorKind::kInvalidArgument, "color must look like #rrggbb");
  }
  auto byte = [&](std::size_t i) {
    return static_cast<std::uint8_t>(nibble(text[i]) * 16 + nibble(text[i + 1]));
  };
  return Rgb{byte(1), byte(3), byte(5)};
}

const std::array<Rgb, 8>& default_palette() {
  static const std::array<Rgb, 8> palette = {
      Rgb{0x1f, 0x77, 0xb4}, Rgb{0xff, 0x7f, 0x0e}, Rgb{0x2c, 0xa0, 0x2c}, Rgb{0xd6, 0x27, 0x28},
      Rgb{0x94, 0x67, 0xbd}, Rgb{0x8c, 0x56, 0x4b}, Rgb{0xe3, 0x77, 0xc2}, Rgb{0x17, 0xbe, 0xcf},
  };
  return palette;
}

RowIndexSet combine(const SelectionGroup& a, const SelectionGroup& b, SetOp op) {
  if (a.source != b.source) {
    throw Error(ErrorKind::kSelection, "cannot combine groups from different sources");
  }
  switch (op) {
    case SetOp::kUnion: return set_union(a.rows, b.rows);
    case SetOp::kIntersect: return set_intersection(a.rows, b.rows);
    case SetOp::kSubtract: return set_difference(a.rows, b.rows);
  }
  return {};
}

FigureId LinkRegistry::register_figure(const std::string& source) {
  FigureId id = next_figure_++;
  figures_.emplace(id, FigureState{source, true, {}});
  return id;
}

void LinkRegistry::close_figure(FigureId figure) {
  auto it = figures_.find(figure);
  if (it != figures_.end()) it->second.live = false;
}

bool LinkRegistry::is_live(FigureId figure) const {
  auto it = figures_.find(figure);
  return it != figures_.end() && it->second.live;
}

std::vector<FigureId> LinkRegistry::live_figures(const std::string& source) const {
  std::vector<FigureId> out;
  for (const auto& [id, state] : figures_) {
    if (state.live && state.source == source) out.push_back(id);
  }
  return out;
}

std::optional<std::string> LinkRegistry::figure_source(FigureId figure) const {
  auto it = figures_.find(figure);
  if (it == figures_.end()) return std::nullopt;
  return it->second.source;
}

void LinkRegistry::rebind_figure(FigureId figure, const std::string& source) {
  auto it = figures_.find(figure);
  if (it == figures_.end()) return;
  it->second.source = source;
  it->second.visible.clear();
}

const SelectionGroup& LinkRegistry::create_group(const DataSource& source, RowIndexSet rows,
                                                 std::string name, std::optional<Rgb> color,
                                                 std::optional<double> alpha) {
  try {
    rows.check_bounds(source.rows());
  } catch (const Error& e) {
    throw Error(ErrorKind::kSelection, e.what());
  }
  const double a = alpha.value_or(kDefaultAlpha);
  if (!(a > 0.0 && a <= 1.0)) {
    throw Error(ErrorKind::kSelection, "group alpha must be in (0, 1]");
  }
  if (find_group(source.id(), name)) {
    throw Error(ErrorKind::kSelection, "group '" + name + "' already exists for this source");
  }
  SelectionGroup group;
  group.id = next_group_++;
  group.name = std::move(name);
  group.source = source.id();
  group.rows = std::move(rows);
  group.z = next_z_++;
  group.color = color.value_or(default_palette()[group.z % default_palette().size()]);
  group.alpha = a;
  return groups_.emplace(group.id, std::move(group)).first->second;
}

void LinkRegistry::delete_group(GroupId group) {
  groups_.erase(group);
  for (auto& [id, state] : figures_) {
    std::erase(state.visible, group);
  }
}

void LinkRegistry::delete_groups_for(const std::string& source) {
  std::vector<GroupId> doomed;
  for (const auto& [id, group] : groups_) {
    if (group.source == source) doomed.push_back(id);
  }
  for (GroupId id : doomed) delete_group(id);
}

const SelectionGroup* LinkRegistry::find_group(GroupId group) const {
  auto it = groups_.find(group);
  return it == groups_.end() ? nullptr : &it->second;
}

const SelectionGroup* LinkRegistry::find_group(const std::string& source,
                                               const std::string& name) const {
  for (const auto& [id, group] : groups_) {
    if (group.source == source && group.name == name) return &group;
  }
  return nullptr;
}

std::vector<const SelectionGroup*> LinkRegistry::groups_for(const std::string& source) const {
  std::vector<const SelectionGroup*> out;
  for (const auto& [id, group] : groups_) {
    if (group.source == source) out.push_back(&group);
  }
  std::sort(out.begin(), out.end(),
            [](const SelectionGroup* a, const SelectionGroup* b) { return a->z < b->z; });
  return out;
}

std::vector<FigureNotification> LinkRegistry::propagate(const SelectionGroup& group) {
  std::erase_if(figures_, [](const auto& entry) { return !entry.second.live; });
  std::vector<FigureNotification> out;
  for (auto& [id, state] : figures_) {
    if (state.source != group.source) continue;
    if (std::find(state.visible.begin(), state.visible.end(), group.id) == state.visible.end()) {
      state.visible.push_back(group.id);
    }
    out.push_back(FigureNotification{id, group.id, group.rows});
  }
  return out;
}

std::vector<GroupId> LinkRegistry::visible_groups(FigureId figure) const {
  auto it = figures_.find(figure);
  if (it == figures_.end() || !it->second.live) return {};
  std::vector<GroupId> out;
  for (GroupId g : it->second.visible) {
    if (groups_.contains(g)) out.push_back(g);
  }
  std::sort(out.begin(), out.end(), [&](GroupId a, GroupId b) {
    return groups_.at(a).z < groups_.at(b).z;
  });
  return out;
}

}  // namespace dvp
