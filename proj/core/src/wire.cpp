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

#include "dvp/wire.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "dvp/error.hpp"

namespace dvp {
namespace {

[[noreturn]] void schema(const std::string& path, const std::string& message) {
  throw SchemaError(ErrorKind::kSchema, path, message);
}

const Json& member(const Json& doc, const char* key, const std::string& path) {
  auto it = doc.find(key);
  if (it == doc.end()) schema(path + "/" + key, "missing field");
  return *it;
}

ColumnType parse_type(const Json& column, const std::string& path) {
  const Json& type = member(column, "type", path);
  if (!type.is_string()) schema(path + "/type", "expected string");
  const auto& name = type.get_ref<const std::string&>();
  if (name == "quantitative") return ColumnType::quantitative();
  if (name == "categorical") return ColumnType::categorical();
  if (name == "ordered_categorical") {
    const Json& order = member(column, "order", path);
    if (!order.is_array()) schema(path + "/order", "expected array");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (!order[i].is_string()) {
        schema(path + "/order/" + std::to_string(i), "expected string");
      }
      labels.push_back(order[i].get<std::string>());
    }
    try {
      return ColumnType::ordered(std::move(labels));
    } catch (const Error& e) {
      schema(path + "/order", e.what());
    }
  }
  schema(path + "/type", "unknown column type '" + name + "'");
}

void append_string(std::string& out, const std::string& text) {
  out += Json(text).dump();
}

}  // namespace

void append_number(std::string& out, double value) {
  char buffer[32];
  // "-0" would come back as the integer 0; keep the sign with a fraction.
  if (value == 0.0 && std::signbit(value)) {
    out += "-0.0";
    return;
  }
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  out.append(buffer, ptr);
}

std::string serialize_datasource(const DataSource& data) {
  std::string out;
  out.reserve(64 + data.rows() * data.cols() * 20);
  out += "{\"name\":";
  append_string(out, data.name());
  out += ",\"columns\":[";
  for (std::size_t c = 0; c < data.cols(); ++c) {
    const Column& column = data.column(c);
    if (c) out += ',';
    out += "{\"name\":";
    append_string(out, column.name());
    out += ",\"type\":\"";
    out += to_string(column.type().kind());
    out += '"';
    if (column.type().kind() == ColumnType::Kind::kOrderedCategorical) {
      out += ",\"order\":[";
      const auto& order = column.type().order();
      for (std::size_t i = 0; i < order.size(); ++i) {
        if (i) out += ',';
        append_string(out, order[i]);
      }
      out += ']';
    }
    out += '}';
  }
  out += "],\"rows\":[";
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (r) out += ',';
    out += '[';
    for (std::size_t c = 0; c < data.cols(); ++c) {
      if (c) out += ',';
      const Column& column = data.column(c);
      if (column.type().is_quantitative()) {
        double v = column.values()[r];
        if (std::isnan(v)) {
          out += "null";
        } else {
          append_number(out, v);
        }
      } else {
        const auto& label = column.labels()[r];
        if (label) {
          append_string(out, *label);
        } else {
          out += "null";
        }
      }
    }
    out += ']';
  }
  out += "]}";
  return out;
}

Json datasource_to_json(const DataSource& data) {
  return Json::parse(serialize_datasource(data));
}

DataSource datasource_from_json(const Json& doc, const std::string& path) {
  if (!doc.is_object()) schema(path, "expected object");
  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) schema(path + "/name", "expected string");
    name = it->get<std::string>();
  }
  const Json& columns = member(doc, "columns", path);
  if (!columns.is_array()) schema(path + "/columns", "expected array");
  const Json& rows = member(doc, "rows", path);
  if (!rows.is_array()) schema(path + "/rows", "expected array");

  const std::size_t p = columns.size();
  const std::size_t n = rows.size();
  std::vector<std::string> names(p);
  std::vector<ColumnType> types;
  types.reserve(p);
  for (std::size_t c = 0; c < p; ++c) {
    const std::string cpath = path + "/columns/" + std::to_string(c);
    const Json& column = columns[c];
    if (!column.is_object()) schema(cpath, "expected object");
    const Json& cname = member(column, "name", cpath);
    if (!cname.is_string()) schema(cpath + "/name", "expected string");
    names[c] = cname.get<std::string>();
    types.push_back(parse_type(column, cpath));
  }

  std::vector<std::vector<double>> numbers(p);
  std::vector<std::vector<std::optional<std::string>>> labels(p);
  for (std::size_t c = 0; c < p; ++c) {
    if (types[c].is_quantitative()) {
      numbers[c].reserve(n);
    } else {
      labels[c].reserve(n);
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    const Json& row = rows[r];
    if (!row.is_array() || row.size() != p) {
      schema(path + "/rows/" + std::to_string(r),
             "expected array of " + std::to_string(p) + " cells");
    }
    for (std::size_t c = 0; c < p; ++c) {
      const Json& cell = row[c];
      if (types[c].is_quantitative()) {
        if (cell.is_null()) {
          numbers[c].push_back(std::numeric_limits<double>::quiet_NaN());
        } else if (cell.is_number()) {
          numbers[c].push_back(cell.get<double>());
        } else {
          throw SchemaError(ErrorKind::kType,
                            path + "/rows/" + std::to_string(r) + "/" + std::to_string(c),
                            "quantitative cell must be a number or null");
        }
      } else {
        if (cell.is_null()) {
          labels[c].emplace_back();
        } else if (cell.is_string()) {
          labels[c].emplace_back(cell.get<std::string>());
        } else {
          throw SchemaError(ErrorKind::kType,
                            path + "/rows/" + std::to_string(r) + "/" + std::to_string(c),
                            "categorical cell must be a string or null");
        }
      }
    }
  }

  std::vector<Column> built;
  built.reserve(p);
  try {
    for (std::size_t c = 0; c < p; ++c) {
      switch (types[c].kind()) {
        case ColumnType::Kind::kQuantitative:
          built.push_back(Column::quantitative(names[c], std::move(numbers[c])));
          break;
        case ColumnType::Kind::kCategorical:
          built.push_back(Column::categorical(names[c], std::move(labels[c])));
          break;
        case ColumnType::Kind::kOrderedCategorical:
          built.push_back(Column::ordered(names[c], std::move(labels[c]), types[c]));
          break;
      }
    }
    return DataSource(std::move(name), std::move(built));
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(ErrorKind::kType, path + "/columns", e.what());
  }
}

DataSource deserialize_datasource(std::string_view bytes) {
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw SchemaError(ErrorKind::kSchema, "", std::string("malformed document: ") + e.what());
  }
  return datasource_from_json(doc);
}

bool looks_like_datasource(const Json& doc) {
  return doc.is_object() && doc.contains("columns");
}

Json rows_to_json(const RowIndexSet& rows) {
  return Json{{"indices", rows.rows()}};
}

RowIndexSet rows_from_json(const Json& doc, const std::string& path) {
  const Json* list = &doc;
  std::string lpath = path;
  if (doc.is_object()) {
    list = &member(doc, "indices", path);
    lpath += "/indices";
  }
  if (!list->is_array()) schema(lpath, "expected array of row indices");
  std::vector<std::size_t> rows;
  rows.reserve(list->size());
  for (std::size_t i = 0; i < list->size(); ++i) {
    const Json& v = (*list)[i];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw SchemaError(ErrorKind::kType, lpath + "/" + std::to_string(i),
                        "row index must be a non-negative integer");
    }
    rows.push_back(v.get<std::size_t>());
  }
  return RowIndexSet::from_unsorted(std::move(rows));
}

}  // namespace dvp
