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

#include <string_view>

#include "dvp/data_model.hpp"

namespace dvp {

struct CsvOptions {
  char delimiter = ',';
  /// When false, columns are named c1..cp.
  bool header = true;
  std::string name = "csv";
};

/// Parses RFC-4180 style CSV (quoted fields, "" escapes, LF or CRLF records).
/// Throws CsvError for ragged rows or bad quoting and Error(kEncoding) for
/// invalid UTF-8. Column types are inferred per column.
DataSource load_csv(std::string_view bytes, const CsvOptions& options = {});

/// Returns the byte offset of the first invalid UTF-8 sequence, if any.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

}  // namespace dvp
