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

#include "dvp/bridge/client.hpp"

#include <httplib.h>

#include <atomic>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

namespace dvp::bridge {

namespace {

constexpr auto kConnectTimeout = std::chrono::seconds(5);
constexpr auto kReadTimeout = std::chrono::seconds(120);

std::unique_ptr<httplib::Client> make_client(const std::string& base_url) {
  auto client = std::make_unique<httplib::Client>(base_url);
  if (!client->is_valid()) {
    throw Error(ErrorKind::kProtocol, "invalid server url '" + base_url + "'");
  }
  client->set_connection_timeout(kConnectTimeout);
  client->set_read_timeout(kReadTimeout);
  client->set_write_timeout(kReadTimeout);
  return client;
}

[[noreturn]] void transport_failure(const std::string& base_url, httplib::Error error) {
  throw Error(ErrorKind::kProtocol,
              "cannot reach " + base_url + ": " + httplib::to_string(error));
}

Json parse_body(const std::string& body) {
  try {
    return Json::parse(body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kProtocol, std::string("malformed response: ") + e.what());
  }
}

}  // namespace

struct Subscription::Impl {
  std::unique_ptr<httplib::Client> http;
  std::thread reader;
  mutable std::mutex mutex;
  std::condition_variable changed;
  std::deque<SSEMessage> events;
  std::string buffer;
  bool headers = false;
  bool finished = false;
  int status = 0;
  std::string failure;
  std::atomic<bool> closing{false};

  /// Splits buffered bytes into "\n\n"-terminated frames.
  void consume(const char* data, std::size_t size) {
    buffer.append(data, size);
    std::size_t end;
    while ((end = buffer.find("\n\n")) != std::string::npos) {
      const std::string frame = buffer.substr(0, end);
      buffer.erase(0, end + 2);
      std::string payload;
      std::size_t pos = 0;
      while (pos <= frame.size()) {
        std::size_t eol = frame.find('\n', pos);
        if (eol == std::string::npos) eol = frame.size();
        std::string_view line(frame.data() + pos, eol - pos);
        if (line.starts_with("data:")) {
          line.remove_prefix(5);
          if (line.starts_with(' ')) line.remove_prefix(1);
          if (!payload.empty()) payload += '\n';
          payload.append(line);
        }
        pos = eol + 1;
      }
      if (payload.empty()) continue;
      SSEMessage message = parse_sse(parse_body(payload));
      std::lock_guard lock(mutex);
      events.push_back(std::move(message));
      changed.notify_all();
    }
  }
};

Subscription::Subscription(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}

Subscription::~Subscription() { close(); }

std::optional<SSEMessage> Subscription::next(std::chrono::milliseconds timeout) {
  std::unique_lock lock(impl_->mutex);
  impl_->changed.wait_for(lock, timeout,
                          [this] { return !impl_->events.empty() || impl_->finished; });
  if (impl_->events.empty()) return std::nullopt;
  SSEMessage message = std::move(impl_->events.front());
  impl_->events.pop_front();
  return message;
}

void Subscription::close() {
  if (!impl_ || impl_->closing.exchange(true)) return;
  impl_->http->stop();
  if (impl_->reader.joinable()) impl_->reader.join();
}

bool Subscription::closed() const {
  std::lock_guard lock(impl_->mutex);
  return impl_->finished;
}

BridgeClient::BridgeClient(std::string base_url) : base_url_(std::move(base_url)) {
  make_client(base_url_);
}

BridgeClient::~BridgeClient() = default;

NewDVTIdMessage BridgeClient::handshake() {
  auto http = make_client(base_url_);
  auto res = http->Get(std::string(kWelcomePath));
  if (!res) transport_failure(base_url_, res.error());
  if (res->status != 200) {
    throw Error(ErrorKind::kProtocol, "handshake failed with HTTP " + std::to_string(res->status));
  }
  return parse_new_id(parse_body(res->body));
}

Json BridgeClient::post(std::string_view path, const std::string& body) {
  auto http = make_client(base_url_);
  auto res = http->Post(std::string(path), body, "application/json");
  if (!res) transport_failure(base_url_, res.error());
  return parse_body(res->body);
}

Json BridgeClient::post_eval(const Json& message) { return post(kEvalPath, message.dump()); }

Json BridgeClient::post_reply(const SSEReplyMessage& reply) {
  return post(kReplyPath, to_json(reply).dump());
}

std::unique_ptr<Subscription> BridgeClient::subscribe(DvpId id) {
  auto impl = std::make_unique<Subscription::Impl>();
  impl->http = make_client(base_url_);
  Subscription::Impl* state = impl.get();
  const std::string path = std::string(kSsePath) + "?dvpId=" + std::to_string(id);

  state->reader = std::thread([state, path] {
    std::string error_body;
    auto res = state->http->Get(
        path,
        [state](const httplib::Response& response) {
          std::lock_guard lock(state->mutex);
          state->status = response.status;
          state->headers = true;
          state->changed.notify_all();
          return !state->closing.load();
        },
        [state, &error_body](const char* data, std::size_t size) {
          if (state->closing.load()) return false;
          if (state->status != 200) {
            error_body.append(data, size);
            return true;
          }
          try {
            state->consume(data, size);
          } catch (const std::exception&) {
            return false;
          }
          return !state->closing.load();
        });
    std::lock_guard lock(state->mutex);
    if (!res && !state->headers) state->failure = httplib::to_string(res.error());
    if (!error_body.empty()) state->failure = error_body;
    state->finished = true;
    state->changed.notify_all();
  });

  {
    std::unique_lock lock(state->mutex);
    state->changed.wait_for(lock, kConnectTimeout * 2,
                            [state] { return state->headers || state->finished; });
    if (state->headers && state->status == 200) {
      lock.unlock();
      return std::unique_ptr<Subscription>(new Subscription(std::move(impl)));
    }
  }
  impl->closing = true;
  impl->http->stop();
  if (impl->reader.joinable()) impl->reader.join();
  std::string message = "cannot open event stream for dvpId " + std::to_string(id);
  if (impl->status != 0) message += ": HTTP " + std::to_string(impl->status);
  if (!impl->failure.empty()) message += ": " + impl->failure;
  throw Error(ErrorKind::kProtocol, message);
}

}  // namespace dvp::bridge
