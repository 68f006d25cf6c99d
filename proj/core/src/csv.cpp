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

#include "dvp/csv.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dvp/error.hpp"

namespace dvp {

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates, and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      return i;
    }
    i += len;
  }
  return std::nullopt;
}

namespace {

struct Record {
  std::size_t line;
  std::vector<std::string> fields;
};

std::vector<Record> split_records(std::string_view text, char delimiter) {
  std::vector<Record> records;
  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    Record record{line, {}};
    std::string field;
    bool at_field_start = true;
    bool end_of_record = false;
    while (!end_of_record) {
      if (i >= n) {
        record.fields.push_back(std::move(field));
        break;
      }
      char c = text[i];
      if (at_field_start && c == '"') {
        ++i;
        std::size_t quote_line = line;
        while (true) {
          if (i >= n) throw CsvError(quote_line, "unterminated quoted field");
          char q = text[i];
          if (q == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              field.push_back('"');
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (q == '\n') ++line;
          field.push_back(q);
          ++i;
        }
        at_field_start = false;
        if (i < n && text[i] != delimiter && text[i] != '\n' && text[i] != '\r') {
          throw CsvError(line, "unexpected character after closing quote");
        }
        continue;
      }
      if (c == delimiter) {
        record.fields.push_back(std::move(field));
        field.clear();
        at_field_start = true;
        ++i;
      } else if (c == '\n' || c == '\r') {
        record.fields.push_back(std::move(field));
        if (c == '\r' && i + 1 < n && text[i + 1] == '\n') ++i;
        ++i;
        ++line;
        end_of_record = true;
      } else {
        field.push_back(c);
        at_field_start = false;
        ++i;
      }
    }
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace

DataSource load_csv(std::string_view bytes, const CsvOptions& options) {
  if (auto bad = find_invalid_utf8(bytes)) {
    auto line = 1 + std::count(bytes.begin(), bytes.begin() + static_cast<long>(*bad), '\n');
    throw Error(ErrorKind::kEncoding, "invalid UTF-8 at byte " + std::to_string(*bad) +
                                          " (line " + std::to_string(line) + ")");
  }
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);

  std::vector<Record> records = split_records(bytes, options.delimiter);

  std::vector<std::string> names;
  std::size_t first_data = 0;
  if (options.header) {
    if (records.empty()) return DataSource(options.name, {});
    names = std::move(records.front().fields);
    first_data = 1;
  } else if (!records.empty()) {
    for (std::size_t c = 0; c < records.front().fields.size(); ++c) {
      names.push_back("c" + std::to_string(c + 1));
    }
  }
  const std::size_t p = names.size();
  const std::size_t n = records.size() - first_data;

  std::vector<std::vector<std::string>> raw(p);
  for (auto& column : raw) column.reserve(n);
  for (std::size_t r = first_data; r < records.size(); ++r) {
    auto& fields = records[r].fields;
    if (fields.size() != p) {
      throw CsvError(records[r].line, "expected " + std::to_string(p) + " fields, found " +
                                          std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < p; ++c) raw[c].push_back(std::move(fields[c]));
  }

  std::vector<Column> columns;
  columns.reserve(p);
  for (std::size_t c = 0; c < p; ++c) {
    if (infer_column_type(raw[c]).is_quantitative()) {
      std::vector<double> values;
      values.reserve(n);
      for (const auto& text : raw[c]) {
        values.push_back(is_missing_token(text) ? std::numeric_limits<double>::quiet_NaN()
                                                : *parse_finite_number(text));
      }
      columns.push_back(Column::quantitative(names[c], std::move(values)));
    } else {
      std::vector<std::optional<std::string>> labels;
      labels.reserve(n);
      for (auto& text : raw[c]) {
        if (is_missing_token(text)) {
          labels.emplace_back();
        } else {
          labels.emplace_back(std::move(text));
        }
      }
      columns.push_back(Column::categorical(names[c], std::move(labels)));
    }
  }
  try {
    return DataSource(options.name, std::move(columns));
  } catch (const Error& e) {
    throw CsvError(1, e.what());
  }
}

}  // namespace dvp
