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
#include <optional>
#include <string>
#include <string_view>

#include "dvp/error.hpp"
#include "dvp/wire.hpp"

namespace dvp::bridge {

using DvpId = std::uint64_t;
using RequestId = std::uint64_t;

inline constexpr std::string_view kWelcomePath = "/welcome";
inline constexpr std::string_view kEvalPath = "/sce";
inline constexpr std::string_view kSsePath = "/sse";
inline constexpr std::string_view kReplyPath = "/sse-reply";

struct Endpoints {
  std::string eval{kEvalPath};
  std::string sse{kSsePath};
  std::string sse_reply{kReplyPath};
};

/// Handshake answer: {"dvpId", "endpoints": {"eval","sse","sseReply"}, "serialization"}.
struct NewDVTIdMessage {
  DvpId dvp_id = 0;
  Endpoints endpoints;
  std::string serialization = "json";
};

enum class EvalOp { kConnect, kDisconnect, kEval, kStore, kFetch, kCommand };

std::string_view to_string(EvalOp op);

/// {"dvpId", "op", "name"?, "payload"?}. For op "command", name is the
/// command (figure.add, selection.set, ...) and payload its arguments.
struct SCEEvalMessage {
  std::optional<DvpId> dvp_id;
  EvalOp op = EvalOp::kEval;
  std::optional<std::string> name;
  std::optional<Json> payload;
};

/// Server-to-client event: {"requestId", "command", "payload"}.
struct SSEMessage {
  RequestId request_id = 0;
  std::string command;
  Json payload = Json::object();
};

enum class ReplyStatus { kOk, kError };

/// Client answer to an SSEMessage: {"requestId", "dvpId", "status", "payload"}.
struct SSEReplyMessage {
  RequestId request_id = 0;
  DvpId dvp_id = 0;
  ReplyStatus status = ReplyStatus::kOk;
  Json payload = Json::object();
};

Json to_json(const NewDVTIdMessage& m);
Json to_json(const SCEEvalMessage& m);
Json to_json(const SSEMessage& m);
Json to_json(const SSEReplyMessage& m);

/// Each parser throws SchemaError naming the missing or ill-typed field.
NewDVTIdMessage parse_new_id(const Json& doc);
SCEEvalMessage parse_eval(const Json& doc);
SSEMessage parse_sse(const Json& doc);
SSEReplyMessage parse_reply(const Json& doc);

/// "data: <document>\n\n"
std::string sse_frame(const SSEMessage& m);

/// Reply documents for /sce and /sse-reply: {"status":"ok"|"error","payload":...}.
Json ok_reply(Json payload = Json::object());
Json error_reply(const Error& error);
Json error_reply(ErrorKind kind, const std::string& message);

}  // namespace dvp::bridge
