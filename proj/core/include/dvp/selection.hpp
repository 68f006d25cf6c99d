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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dvp/data_model.hpp"

namespace dvp {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  /// "#rrggbb", lowercase.
  std::string hex() const;
  /// Accepts "#rrggbb"; throws Error(kInvalidArgument) otherwise.
  static Rgb from_hex(std::string_view text);
  bool operator==(const Rgb&) const = default;
};

using GroupId = std::uint64_t;
using FigureId = std::uint64_t;

inline constexpr double kDefaultAlpha = 0.5;

/// Eight colors cycled in group creation order.
const std::array<Rgb, 8>& default_palette();

struct SelectionGroup {
  GroupId id = 0;
  std::string name;
  /// DataSource id.
  std::string source;
  RowIndexSet rows;
  Rgb color;
  double alpha = kDefaultAlpha;
  /// Creation order; later groups draw over earlier ones.
  std::uint64_t z = 0;
};

enum class SetOp { kUnion, kIntersect, kSubtract };

/// Throws Error(kSelection) when the groups belong to different sources.
RowIndexSet combine(const SelectionGroup& a, const SelectionGroup& b, SetOp op);

struct FigureNotification {
  FigureId figure = 0;
  GroupId group = 0;
  RowIndexSet rows;
};

/// Groups per source plus the figures that display each source. Single-writer:
/// callers serialize access (the bridge kernel owns one instance).
class LinkRegistry {
 public:
  FigureId register_figure(const std::string& source);
  /// Marks a figure dead; it is pruned on the next propagate.
  void close_figure(FigureId figure);
  bool is_live(FigureId figure) const;
  std::vector<FigureId> live_figures(const std::string& source) const;
  std::optional<std::string> figure_source(FigureId figure) const;
  /// Points a figure at a new source (dataset swap) and clears its visible groups.
  void rebind_figure(FigureId figure, const std::string& source);

  /// Rows must lie inside \p source; alpha in (0, 1]; names unique per source.
  /// Color and alpha default to the palette and kDefaultAlpha.
  const SelectionGroup& create_group(const DataSource& source, RowIndexSet rows, std::string name,
                                     std::optional<Rgb> color = std::nullopt,
                                     std::optional<double> alpha = std::nullopt);
  void delete_group(GroupId group);
  void delete_groups_for(const std::string& source);
  const SelectionGroup* find_group(GroupId group) const;
  const SelectionGroup* find_group(const std::string& source, const std::string& name) const;
  /// Groups on \p source in z-order.
  std::vector<const SelectionGroup*> groups_for(const std::string& source) const;

  /// One notification per live figure on the group's source; dead figures are
  /// pruned first. Each notified figure gains the group in its visible list.
  std::vector<FigureNotification> propagate(const SelectionGroup& group);

  /// Visible group ids for \p figure in z-order.
  std::vector<GroupId> visible_groups(FigureId figure) const;

 private:
  struct FigureState {
    std::string source;
    bool live = true;
    std::vector<GroupId> visible;
  };

  std::map<FigureId, FigureState> figures_;
  std::map<GroupId, SelectionGroup> groups_;
  FigureId next_figure_ = 0;
  GroupId next_group_ = 0;
  std::uint64_t next_z_ = 0;
};

}  // namespace dvp
