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

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "dvp/bridge/messages.hpp"

namespace dvp::bridge {

/// FIFO of encoded event frames for one open SSE connection.
class EventStream {
 public:
  void push(std::string frame);
  /// Next frame, or nullopt after \p timeout or once closed and drained.
  std::optional<std::string> pop(std::chrono::milliseconds timeout);
  void close();
  bool closed() const;

 private:
  mutable std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<std::string> frames_;
  bool closed_ = false;
};

/// Connected visualizer clients: id assignment, session flags, SSE streams
/// and request-id assignment. Thread-safe.
class ClientHub {
 public:
  /// Assigns the next DvpId (0, 1, 2, ... for the lifetime of this hub).
  NewDVTIdMessage handshake();

  bool is_registered(DvpId id) const;
  /// Throws Error(kProtocol) for an unregistered id.
  void require_registered(DvpId id) const;

  void set_session(DvpId id, bool connected);
  bool in_session(DvpId id) const;
  std::vector<DvpId> sessions() const;

  /// Opens (or replaces) the client's event stream.
  std::shared_ptr<EventStream> open_stream(DvpId id);
  /// Closes \p stream if it is still the client's current one.
  void release_stream(DvpId id, const std::shared_ptr<EventStream>& stream);
  void close_stream(DvpId id);
  bool has_stream(DvpId id) const;
  std::vector<DvpId> streaming_clients() const;

  /// Assigns a request id and queues the event. The id is consumed even when
  /// delivery fails: throws DeliveryError if \p target has no open stream.
  RequestId send(DvpId target, const std::string& command, Json payload);

  /// Number of request ids handed out so far.
  RequestId issued_requests() const { return next_request_.load(); }

  /// Closes every stream; later sends fail.
  void shutdown();
  bool stopping() const { return stopping_.load(); }

 private:
  struct Client {
    bool session = false;
    std::shared_ptr<EventStream> stream;
  };

  std::atomic<DvpId> next_dvp_{0};
  std::atomic<RequestId> next_request_{0};
  std::atomic<bool> stopping_{false};
  mutable std::mutex mutex_;
  std::map<DvpId, Client> clients_;
};

}  // namespace dvp::bridge
