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

#include "dvp/bridge/hub.hpp"

namespace dvp::bridge {

void EventStream::push(std::string frame) {
  {
    std::lock_guard lock(mutex_);
    frames_.push_back(std::move(frame));
  }
  ready_.notify_one();
}

std::optional<std::string> EventStream::pop(std::chrono::milliseconds timeout) {
  std::unique_lock lock(mutex_);
  ready_.wait_for(lock, timeout, [&] { return !frames_.empty() || closed_; });
  if (frames_.empty()) return std::nullopt;
  std::string frame = std::move(frames_.front());
  frames_.pop_front();
  return frame;
}

void EventStream::close() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  ready_.notify_all();
}

bool EventStream::closed() const {
  std::lock_guard lock(mutex_);
  return closed_;
}

NewDVTIdMessage ClientHub::handshake() {
  NewDVTIdMessage message;
  message.dvp_id = next_dvp_.fetch_add(1);
  std::lock_guard lock(mutex_);
  clients_.emplace(message.dvp_id, Client{});
  return message;
}

bool ClientHub::is_registered(DvpId id) const {
  std::lock_guard lock(mutex_);
  return clients_.contains(id);
}

void ClientHub::require_registered(DvpId id) const {
  if (!is_registered(id)) {
    throw Error(ErrorKind::kProtocol, "unknown dvpId " + std::to_string(id));
  }
}

void ClientHub::set_session(DvpId id, bool connected) {
  std::lock_guard lock(mutex_);
  auto it = clients_.find(id);
  if (it == clients_.end()) throw Error(ErrorKind::kProtocol, "unknown dvpId " + std::to_string(id));
  it->second.session = connected;
}

bool ClientHub::in_session(DvpId id) const {
  std::lock_guard lock(mutex_);
  auto it = clients_.find(id);
  return it != clients_.end() && it->second.session;
}

std::vector<DvpId> ClientHub::sessions() const {
  std::lock_guard lock(mutex_);
  std::vector<DvpId> out;
  for (const auto& [id, client] : clients_) {
    if (client.session) out.push_back(id);
  }
  return out;
}

std::shared_ptr<EventStream> ClientHub::open_stream(DvpId id) {
  auto stream = std::make_shared<EventStream>();
  std::shared_ptr<EventStream> previous;
  {
    std::lock_guard lock(mutex_);
    auto it = clients_.find(id);
    if (it == clients_.end()) {
      throw Error(ErrorKind::kProtocol, "unknown dvpId " + std::to_string(id));
    }
    if (stopping_) stream->close();
    previous = std::exchange(it->second.stream, stream);
  }
  if (previous) previous->close();
  return stream;
}

void ClientHub::release_stream(DvpId id, const std::shared_ptr<EventStream>& stream) {
  stream->close();
  std::lock_guard lock(mutex_);
  auto it = clients_.find(id);
  if (it != clients_.end() && it->second.stream == stream) it->second.stream.reset();
}

void ClientHub::close_stream(DvpId id) {
  std::shared_ptr<EventStream> stream;
  {
    std::lock_guard lock(mutex_);
    auto it = clients_.find(id);
    if (it != clients_.end()) stream = std::exchange(it->second.stream, nullptr);
  }
  if (stream) stream->close();
}

bool ClientHub::has_stream(DvpId id) const {
  std::lock_guard lock(mutex_);
  auto it = clients_.find(id);
  return it != clients_.end() && it->second.stream && !it->second.stream->closed();
}

std::vector<DvpId> ClientHub::streaming_clients() const {
  std::lock_guard lock(mutex_);
  std::vector<DvpId> out;
  for (const auto& [id, client] : clients_) {
    if (client.stream && !client.stream->closed()) out.push_back(id);
  }
  return out;
}

RequestId ClientHub::send(DvpId target, const std::string& command, Json payload) {
  std::lock_guard lock(mutex_);
  const RequestId id = next_request_.fetch_add(1);
  auto it = clients_.find(target);
  if (it == clients_.end() || !it->second.stream || it->second.stream->closed()) {
    throw DeliveryError(id, "no open event stream for dvpId " + std::to_string(target));
  }
  // Pushed under the hub lock so a stream sees ids in send order.
  it->second.stream->push(sse_frame(SSEMessage{id, command, std::move(payload)}));
  return id;
}

void ClientHub::shutdown() {
  stopping_ = true;
  std::vector<std::shared_ptr<EventStream>> streams;
  {
    std::lock_guard lock(mutex_);
    for (auto& [id, client] : clients_) {
      if (client.stream) streams.push_back(std::exchange(client.stream, nullptr));
    }
  }
  for (auto& s : streams) s->close();
}

}  // namespace dvp::bridge
