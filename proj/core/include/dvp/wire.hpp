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

#include <string>
#include <string_view>

#include <json.hpp>

#include "dvp/data_model.hpp"

namespace dvp {

using Json = nlohmann::json;

/// Encodes {"name","columns":[{"name","type","order"?}],"rows":[[...]]}.
/// Numbers use the shortest round-trip decimal form; missing cells are null.
std::string serialize_datasource(const DataSource& data);

/// Throws SchemaError (kind kSchema for structure, kType for ill-typed cells)
/// carrying the path of the offending node.
DataSource deserialize_datasource(std::string_view bytes);

Json datasource_to_json(const DataSource& data);
DataSource datasource_from_json(const Json& doc, const std::string& path = "");

/// Heuristic used for variable payloads: an object with a "columns" member.
bool looks_like_datasource(const Json& doc);

Json rows_to_json(const RowIndexSet& rows);
RowIndexSet rows_from_json(const Json& doc, const std::string& path = "");

/// Shortest decimal text that parses back to exactly `value`.
void append_number(std::string& out, double value);

}  // namespace dvp
