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

#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "dvp/bridge/messages.hpp"

namespace dvp::bridge {

/// Open GET /sse stream. Frames are parsed on a background thread.
class Subscription {
 public:
  ~Subscription();
  Subscription(const Subscription&) = delete;
  Subscription& operator=(const Subscription&) = delete;

  /// Next event in arrival order, or nullopt after \p timeout.
  std::optional<SSEMessage> next(std::chrono::milliseconds timeout);
  /// Drops the connection. Idempotent.
  void close();
  bool closed() const;

 private:
  friend class BridgeClient;
  struct Impl;
  explicit Subscription(std::unique_ptr<Impl> impl);
  std::unique_ptr<Impl> impl_;
};

/// Blocking HTTP client for the bridge endpoints. Transport failures throw
/// Error(kProtocol); protocol-level errors come back as reply documents.
class BridgeClient {
 public:
  /// \p base_url like "http://127.0.0.1:8765".
  explicit BridgeClient(std::string base_url);
  ~BridgeClient();

  NewDVTIdMessage handshake();
  /// POST /sce; returns {"status", "payload"}.
  Json post_eval(const Json& message);
  Json post_eval(const SCEEvalMessage& message) { return post_eval(to_json(message)); }
  /// POST /sse-reply.
  Json post_reply(const SSEReplyMessage& reply);
  /// Returns once the server has accepted the stream.
  std::unique_ptr<Subscription> subscribe(DvpId id);

  const std::string& base_url() const noexcept { return base_url_; }

 private:
  Json post(std::string_view path, const std::string& body);

  std::string base_url_;
};

}  // namespace dvp::bridge
