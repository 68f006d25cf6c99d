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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dvp {

/// Broad category of a failure. Carried across the wire as the error "kind".
enum class ErrorKind {
  kCsv,
  kEncoding,
  kMerge,
  kInvalidArgument,
  kLex,
  kParse,
  kCompile,
  kKde,
  kQuery,
  kSelection,
  kSchema,
  kType,
  kProtocol,
  kUnbound,
  kUnsupported,
  kDelivery,
  kTimeout,
  kDuplicate,
  kRender,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Ragged or malformed CSV input. `line` is 1-based in the source bytes.
class CsvError : public Error {
 public:
  CsvError(std::size_t line, const std::string& message)
      : Error(ErrorKind::kCsv, "line " + std::to_string(line) + ": " + message),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Lexing or parsing failure in a GoG script, positioned at line:column (1-based).
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorKind kind, std::size_t line, std::size_t column,
              const std::string& message)
      : Error(kind, std::to_string(line) + ":" + std::to_string(column) + ": " +
                        message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Malformed wire document; `path` is a JSON-pointer style location.
class SchemaError : public Error {
 public:
  SchemaError(ErrorKind kind, std::string path, const std::string& message)
      : Error(kind, (path.empty() ? std::string("/") : path) + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class TimeoutError : public Error {
 public:
  explicit TimeoutError(std::uint64_t request_id)
      : Error(ErrorKind::kTimeout,
              "timed out waiting for reply to request " + std::to_string(request_id)),
        request_id_(request_id) {}
  std::uint64_t request_id() const noexcept { return request_id_; }

 private:
  std::uint64_t request_id_;
};

/// An SSE send that found no open stream. The request id was still consumed.
class DeliveryError : public Error {
 public:
  DeliveryError(std::uint64_t request_id, const std::string& message)
      : Error(ErrorKind::kDelivery, message), request_id_(request_id) {}
  std::uint64_t request_id() const noexcept { return request_id_; }

 private:
  std::uint64_t request_id_;
};

}  // namespace dvp
