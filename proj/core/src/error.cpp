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

#include "dvp/error.hpp"

namespace dvp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCsv: return "csv";
    case ErrorKind::kEncoding: return "encoding";
    case ErrorKind::kMerge: return "merge";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kLex: return "lex";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kCompile: return "compile";
    case ErrorKind::kKde: return "kde";
    case ErrorKind::kQuery: return "query";
    case ErrorKind::kSelection: return "selection";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kType: return "type";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kUnbound: return "unbound";
    case ErrorKind::kUnsupported: return "unsupported";
    case ErrorKind::kDelivery: return "delivery";
    case ErrorKind::kTimeout: return "timeout";
    case ErrorKind::kDuplicate: return "duplicate";
    case ErrorKind::kRender: return "render";
  }
  return "unknown";
}

}  // namespace dvp
