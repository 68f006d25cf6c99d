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

#include "dvp/data_model.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <iterator>
#include <set>
#include <unordered_set>

#include "dvp/error.hpp"

namespace dvp {
namespace {

std::string next_source_id() {
  static std::atomic<std::uint64_t> counter{0};
  return "ds-" + std::to_string(counter.fetch_add(1));
}

void invalid(const std::string& message) {
  throw Error(ErrorKind::kInvalidArgument, message);
}

}  // namespace

ColumnType ColumnType::ordered(std::vector<std::string> order) {
  if (order.empty()) invalid("ordered categorical type needs a non-empty order");
  std::unordered_set<std::string> seen;
  for (const auto& label : order) {
    if (!seen.insert(label).second) {
      invalid("duplicate label '" + label + "' in category order");
    }
  }
  return ColumnType(Kind::kOrderedCategorical, std::move(order));
}

std::string_view to_string(ColumnType::Kind kind) {
  switch (kind) {
    case ColumnType::Kind::kQuantitative: return "quantitative";
    case ColumnType::Kind::kCategorical: return "categorical";
    case ColumnType::Kind::kOrderedCategorical: return "ordered_categorical";
  }
  return "unknown";
}

Column Column::quantitative(std::string name, std::vector<double> values) {
  for (double v : values) {
    if (std::isinf(v)) invalid("column '" + name + "' holds a non-finite value");
  }
  Column column(std::move(name), ColumnType::quantitative());
  column.values_ = std::move(values);
  return column;
}

Column Column::categorical(std::string name,
                           std::vector<std::optional<std::string>> labels) {
  Column column(std::move(name), ColumnType::categorical());
  column.labels_ = std::move(labels);
  return column;
}

Column Column::ordered(std::string name, std::vector<std::optional<std::string>> labels,
                       ColumnType type) {
  if (type.kind() != ColumnType::Kind::kOrderedCategorical) {
    invalid("column '" + name + "' needs an ordered categorical type");
  }
  const auto& order = type.order();
  std::unordered_set<std::string> allowed(order.begin(), order.end());
  for (const auto& label : labels) {
    if (label && !allowed.contains(*label)) {
      invalid("label '" + *label + "' of column '" + name + "' is not in its order");
    }
  }
  Column column(std::move(name), std::move(type));
  column.labels_ = std::move(labels);
  return column;
}

std::size_t Column::size() const noexcept {
  return type_.is_quantitative() ? values_.size() : labels_.size();
}

bool Column::is_missing(std::size_t row) const {
  if (type_.is_quantitative()) return std::isnan(values_.at(row));
  return !labels_.at(row).has_value();
}

Cell Column::cell(std::size_t row) const {
  if (type_.is_quantitative()) {
    double v = values_.at(row);
    if (std::isnan(v)) return std::monostate{};
    return v;
  }
  const auto& label = labels_.at(row);
  if (!label) return std::monostate{};
  return *label;
}

Column Column::renamed(std::string name) const {
  Column copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool operator==(const Column& a, const Column& b) {
  if (a.name_ != b.name_ || a.type_ != b.type_) return false;
  if (a.labels_ != b.labels_) return false;
  if (a.values_.size() != b.values_.size()) return false;
  for (std::size_t i = 0; i < a.values_.size(); ++i) {
    double x = a.values_[i];
    double y = b.values_[i];
    if (std::isnan(x) != std::isnan(y)) return false;
    if (!std::isnan(x) && x != y) return false;
  }
  return true;
}

DataSource::DataSource(std::string name, std::vector<Column> columns)
    : id_(next_source_id()), name_(std::move(name)), columns_(std::move(columns)) {
  std::unordered_set<std::string> names;
  for (const auto& column : columns_) {
    if (!names.insert(column.name()).second) {
      invalid("duplicate column name '" + column.name() + "'");
    }
  }
  if (!columns_.empty()) {
    rows_ = columns_.front().size();
    for (const auto& column : columns_) {
      if (column.size() != rows_) {
        invalid("column '" + column.name() + "' has " + std::to_string(column.size()) +
                " rows, expected " + std::to_string(rows_));
      }
    }
  }
}

const Column& DataSource::column(std::size_t index) const {
  if (index >= columns_.size()) {
    invalid("column index " + std::to_string(index) + " out of range");
  }
  return columns_[index];
}

const Column& DataSource::column(std::string_view name) const {
  auto index = column_index(name);
  if (!index) invalid("unknown column " + std::string(name));
  return columns_[*index];
}

std::optional<std::size_t> DataSource::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name() == name) return i;
  }
  return std::nullopt;
}

Cell DataSource::cell(std::size_t row, std::size_t col) const {
  return column(col).cell(row);
}

bool operator==(const DataSource& a, const DataSource& b) {
  return a.name_ == b.name_ && a.rows_ == b.rows_ && a.columns_ == b.columns_;
}

RowIndexSet RowIndexSet::from_sorted(std::vector<std::size_t> rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i] <= rows[i - 1]) invalid("row indices must be strictly increasing");
  }
  return RowIndexSet(std::move(rows));
}

RowIndexSet RowIndexSet::from_unsorted(std::vector<std::size_t> rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return RowIndexSet(std::move(rows));
}

RowIndexSet RowIndexSet::all(std::size_t n) {
  std::vector<std::size_t> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = i;
  return RowIndexSet(std::move(rows));
}

bool RowIndexSet::contains(std::size_t row) const {
  return std::binary_search(rows_.begin(), rows_.end(), row);
}

void RowIndexSet::check_bounds(std::size_t n) const {
  if (!rows_.empty() && rows_.back() >= n) {
    invalid("row " + std::to_string(rows_.back()) + " out of range for " +
            std::to_string(n) + " rows");
  }
}

RowIndexSet set_union(const RowIndexSet& a, const RowIndexSet& b) {
  std::vector<std::size_t> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return RowIndexSet::from_sorted(std::move(out));
}

RowIndexSet set_intersection(const RowIndexSet& a, const RowIndexSet& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return RowIndexSet::from_sorted(std::move(out));
}

RowIndexSet set_difference(const RowIndexSet& a, const RowIndexSet& b) {
  std::vector<std::size_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return RowIndexSet::from_sorted(std::move(out));
}

bool is_missing_token(std::string_view text) { return text.empty() || text == "NaN"; }

std::optional<double> parse_finite_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value, std::chars_format::general);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

ColumnType infer_column_type(std::span<const std::string> values) {
  for (const auto& value : values) {
    if (is_missing_token(value)) continue;
    if (!parse_finite_number(value)) return ColumnType::categorical();
  }
  return ColumnType::quantitative();
}

namespace {

DataSource merge_rows(const DataSource& a, const DataSource& b) {
  if (a.cols() != b.cols()) {
    std::size_t first = std::min(a.cols(), b.cols());
    const auto& extra = a.cols() > b.cols() ? a.column(first) : b.column(first);
    throw Error(ErrorKind::kMerge, "schema mismatch at column '" + extra.name() + "'");
  }
  std::vector<Column> merged;
  merged.reserve(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    const Column& x = a.column(c);
    const Column& y = b.column(c);
    if (x.name() != y.name() || x.type() != y.type()) {
      throw Error(ErrorKind::kMerge, "schema mismatch at column '" + x.name() + "'");
    }
    if (x.type().is_quantitative()) {
      std::vector<double> values(x.values().begin(), x.values().end());
      values.insert(values.end(), y.values().begin(), y.values().end());
      merged.push_back(Column::quantitative(x.name(), std::move(values)));
    } else {
      auto labels = x.labels();
      labels.insert(labels.end(), y.labels().begin(), y.labels().end());
      if (x.type().kind() == ColumnType::Kind::kOrderedCategorical) {
        merged.push_back(Column::ordered(x.name(), std::move(labels), x.type()));
      } else {
        merged.push_back(Column::categorical(x.name(), std::move(labels)));
      }
    }
  }
  return DataSource(a.name(), std::move(merged));
}

DataSource merge_columns(const DataSource& a, const DataSource& b) {
  if (a.rows() != b.rows()) {
    const std::string name = b.cols() > 0 ? b.column(0).name() : std::string("<none>");
    throw Error(ErrorKind::kMerge, "row count mismatch (" + std::to_string(a.rows()) +
                                       " vs " + std::to_string(b.rows()) +
                                       ") at column '" + name + "'");
  }
  std::vector<Column> merged = a.columns();
  for (const auto& column : b.columns()) {
    if (a.column_index(column.name())) {
      throw Error(ErrorKind::kMerge,
                  "column '" + column.name() + "' exists in both sources");
    }
    merged.push_back(column);
  }
  return DataSource(a.name(), std::move(merged));
}

}  // namespace

DataSource merge(const DataSource& a, const DataSource& b, MergeMode mode) {
  return mode == MergeMode::kRows ? merge_rows(a, b) : merge_columns(a, b);
}

}  // namespace dvp
