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

#include "dvp/bridge/messages.hpp"

namespace dvp::bridge {
namespace {

[[noreturn]] void schema(const std::string& path, const std::string& message) {
  throw SchemaError(ErrorKind::kSchema, path, message);
}

void require_object(const Json& doc) {
  if (!doc.is_object()) schema("", "expected object");
}

const Json& field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) schema(std::string("/") + key, std::string("missing field ") + key);
  return *it;
}

std::uint64_t id_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    schema(std::string("/") + key, std::string(key) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string string_field(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_string()) schema(std::string("/") + key, std::string(key) + " must be a string");
  return v.get<std::string>();
}

}  // namespace

std::string_view to_string(EvalOp op) {
  switch (op) {
    case EvalOp::kConnect: return "connect";
    case EvalOp::kDisconnect: return "disconnect";
    case EvalOp::kEval: return "eval";
    case EvalOp::kStore: return "store";
    case EvalOp::kFetch: return "fetch";
    case EvalOp::kCommand: return "command";
  }
  return "unknown";
}

Json to_json(const NewDVTIdMessage& m) {
  return Json{{"dvpId", m.dvp_id},
              {"endpoints",
               {{"eval", m.endpoints.eval}, {"sse", m.endpoints.sse}, {"sseReply", m.endpoints.sse_reply}}},
              {"serialization", m.serialization}};
}

Json to_json(const SCEEvalMessage& m) {
  Json doc{{"op", to_string(m.op)}};
  if (m.dvp_id) doc["dvpId"] = *m.dvp_id;
  if (m.name) doc["name"] = *m.name;
  if (m.payload) doc["payload"] = *m.payload;
  return doc;
}

Json to_json(const SSEMessage& m) {
  return Json{{"requestId", m.request_id}, {"command", m.command}, {"payload", m.payload}};
}

Json to_json(const SSEReplyMessage& m) {
  return Json{{"requestId", m.request_id},
              {"dvpId", m.dvp_id},
              {"status", m.status == ReplyStatus::kOk ? "ok" : "error"},
              {"payload", m.payload}};
}

NewDVTIdMessage parse_new_id(const Json& doc) {
  require_object(doc);
  NewDVTIdMessage m;
  m.dvp_id = id_field(doc, "dvpId");
  const Json& endpoints = field(doc, "endpoints");
  if (!endpoints.is_object()) schema("/endpoints", "expected object");
  for (const char* key : {"eval", "sse", "sseReply"}) {
    if (!endpoints.contains(key) || !endpoints[key].is_string()) {
      schema(std::string("/endpoints/") + key, std::string("missing field ") + key);
    }
  }
  m.endpoints.eval = endpoints["eval"].get<std::string>();
  m.endpoints.sse = endpoints["sse"].get<std::string>();
  m.endpoints.sse_reply = endpoints["sseReply"].get<std::string>();
  m.serialization = string_field(doc, "serialization");
  return m;
}

SCEEvalMessage parse_eval(const Json& doc) {
  require_object(doc);
  SCEEvalMessage m;
  const std::string op = string_field(doc, "op");
  if (op == "connect") {
    m.op = EvalOp::kConnect;
  } else if (op == "disconnect") {
    m.op = EvalOp::kDisconnect;
  } else if (op == "eval") {
    m.op = EvalOp::kEval;
  } else if (op == "store") {
    m.op = EvalOp::kStore;
  } else if (op == "fetch") {
    m.op = EvalOp::kFetch;
  } else if (op == "command") {
    m.op = EvalOp::kCommand;
  } else {
    schema("/op", "unknown op '" + op + "'");
  }
  if (doc.contains("dvpId") && !doc["dvpId"].is_null()) m.dvp_id = id_field(doc, "dvpId");
  if (doc.contains("name") && !doc["name"].is_null()) m.name = string_field(doc, "name");
  if (doc.contains("payload") && !doc["payload"].is_null()) m.payload = doc["payload"];

  if (m.op != EvalOp::kConnect && !m.dvp_id) schema("/dvpId", "missing field dvpId");
  switch (m.op) {
    case EvalOp::kStore:
      if (!m.name) schema("/name", "missing field name");
      if (!m.payload) schema("/payload", "missing field payload");
      break;
    case EvalOp::kFetch:
    case EvalOp::kCommand:
      if (!m.name) schema("/name", "missing field name");
      break;
    case EvalOp::kEval:
      if (!m.payload) schema("/payload", "missing field payload");
      if (!m.payload->is_string()) schema("/payload", "eval payload must be an expression string");
      break;
    default:
      break;
  }
  return m;
}

SSEMessage parse_sse(const Json& doc) {
  require_object(doc);
  SSEMessage m;
  m.request_id = id_field(doc, "requestId");
  m.command = string_field(doc, "command");
  if (doc.contains("payload")) m.payload = doc["payload"];
  return m;
}

SSEReplyMessage parse_reply(const Json& doc) {
  require_object(doc);
  SSEReplyMessage m;
  m.request_id = id_field(doc, "requestId");
  m.dvp_id = id_field(doc, "dvpId");
  const std::string status = string_field(doc, "status");
  if (status == "ok") {
    m.status = ReplyStatus::kOk;
  } else if (status == "error") {
    m.status = ReplyStatus::kError;
  } else {
    schema("/status", "status must be ok or error");
  }
  if (doc.contains("payload")) m.payload = doc["payload"];
  return m;
}

std::string sse_frame(const SSEMessage& m) { return "data: " + to_json(m).dump() + "\n\n"; }

Json ok_reply(Json payload) { return Json{{"status", "ok"}, {"payload", std::move(payload)}}; }

Json error_reply(ErrorKind kind, const std::string& message) {
  return Json{{"status", "error"},
              {"payload", {{"kind", std::string(to_string(kind))}, {"message", message}}}};
}

Json error_reply(const Error& error) {
  Json reply = error_reply(error.kind(), error.what());
  if (const auto* s = dynamic_cast<const SchemaError*>(&error)) {
    reply["payload"]["path"] = s->path().empty() ? "/" : s->path();
  }
  if (const auto* t = dynamic_cast<const TimeoutError*>(&error)) {
    reply["payload"]["requestId"] = t->request_id();
  }
  if (const auto* d = dynamic_cast<const DeliveryError*>(&error)) {
    reply["payload"]["requestId"] = d->request_id();
  }
  return reply;
}

}  // namespace dvp::bridge
