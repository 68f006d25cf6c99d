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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dvp {

/// Measurement level of a column.
class ColumnType {
 public:
  enum class Kind { kQuantitative, kCategorical, kOrderedCategorical };

  static ColumnType quantitative() { return ColumnType(Kind::kQuantitative, {}); }
  static ColumnType categorical() { return ColumnType(Kind::kCategorical, {}); }
  /// Throws InvalidArgument if `order` is empty or has duplicate labels.
  static ColumnType ordered(std::vector<std::string> order);

  Kind kind() const noexcept { return kind_; }
  bool is_quantitative() const noexcept { return kind_ == Kind::kQuantitative; }
  /// Category order; empty unless kind() is kOrderedCategorical.
  const std::vector<std::string>& order() const noexcept { return order_; }

  bool operator==(const ColumnType&) const = default;

 private:
  ColumnType(Kind kind, std::vector<std::string> order)
      : kind_(kind), order_(std::move(order)) {}

  Kind kind_;
  std::vector<std::string> order_;
};

std::string_view to_string(ColumnType::Kind kind);

/// A single cell: missing, a number, or a category label.
using Cell = std::variant<std::monostate, double, std::string>;

/// One named, typed column. Quantitative columns store doubles with NaN as the
/// missing marker; categorical columns store optional labels.
class Column {
 public:
  /// Non-finite values other than NaN are rejected.
  static Column quantitative(std::string name, std::vector<double> values);
  static Column categorical(std::string name,
                            std::vector<std::optional<std::string>> labels);
  /// Every present label must appear in `type.order()`.
  static Column ordered(std::string name, std::vector<std::optional<std::string>> labels,
                        ColumnType type);

  const std::string& name() const noexcept { return name_; }
  const ColumnType& type() const noexcept { return type_; }
  std::size_t size() const noexcept;

  /// Quantitative storage. Empty for categorical columns.
  std::span<const double> values() const noexcept { return values_; }
  /// Categorical storage. Empty for quantitative columns.
  const std::vector<std::optional<std::string>>& labels() const noexcept { return labels_; }

  bool is_missing(std::size_t row) const;
  Cell cell(std::size_t row) const;

  Column renamed(std::string name) const;

  /// Cell-identical comparison; two missing cells compare equal.
  friend bool operator==(const Column& a, const Column& b);

 private:
  Column(std::string name, ColumnType type) : name_(std::move(name)), type_(std::move(type)) {}

  std::string name_;
  ColumnType type_;
  std::vector<double> values_;
  std::vector<std::optional<std::string>> labels_;
};

/// Immutable n x p table. Storage is per-column.
class DataSource {
 public:
  DataSource() : DataSource("", {}) {}
  /// Throws InvalidArgument on unequal column lengths or duplicate column names.
  DataSource(std::string name, std::vector<Column> columns);

  /// Process-unique token assigned at construction. Not part of equality.
  const std::string& id() const noexcept { return id_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  const std::vector<Column>& columns() const noexcept { return columns_; }
  const Column& column(std::size_t index) const;
  /// Throws InvalidArgument naming the column when absent.
  const Column& column(std::string_view name) const;
  std::optional<std::size_t> column_index(std::string_view name) const;

  Cell cell(std::size_t row, std::size_t col) const;

  /// Same name, schema, and cells. Ids are ignored.
  friend bool operator==(const DataSource& a, const DataSource& b);

 private:
  std::string id_;
  std::string name_;
  std::vector<Column> columns_;
  std::size_t rows_ = 0;
};

/// Sorted, duplicate-free row indices.
class RowIndexSet {
 public:
  RowIndexSet() = default;
  /// Throws InvalidArgument unless strictly increasing.
  static RowIndexSet from_sorted(std::vector<std::size_t> rows);
  static RowIndexSet from_unsorted(std::vector<std::size_t> rows);
  static RowIndexSet all(std::size_t n);

  const std::vector<std::size_t>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  bool contains(std::size_t row) const;
  /// Throws InvalidArgument if any index is >= n.
  void check_bounds(std::size_t n) const;

  auto begin() const noexcept { return rows_.begin(); }
  auto end() const noexcept { return rows_.end(); }

  bool operator==(const RowIndexSet&) const = default;

 private:
  explicit RowIndexSet(std::vector<std::size_t> rows) : rows_(std::move(rows)) {}
  std::vector<std::size_t> rows_;
};

RowIndexSet set_union(const RowIndexSet& a, const RowIndexSet& b);
RowIndexSet set_intersection(const RowIndexSet& a, const RowIndexSet& b);
RowIndexSet set_difference(const RowIndexSet& a, const RowIndexSet& b);

/// Empty field or the literal "NaN".
bool is_missing_token(std::string_view text);
/// Full-string decimal parse; nullopt unless the result is finite.
std::optional<double> parse_finite_number(std::string_view text);

/// Quantitative iff every non-missing value parses as a finite number.
/// OrderedCategorical is never inferred.
ColumnType infer_column_type(std::span<const std::string> values);

enum class MergeMode { kRows, kColumns };

/// Row mode needs identical schemas; column mode needs equal n and disjoint names.
/// Throws Error(kMerge) naming the first conflicting column.
DataSource merge(const DataSource& a, const DataSource& b, MergeMode mode);

}  // namespace dvp
