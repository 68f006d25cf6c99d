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

#include "dvp/bridge/server.hpp"

#include <httplib.h>

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <mutex>
#include <thread>

namespace dvp::bridge {

namespace {

void send_json(httplib::Response& res, const Json& doc) {
  res.status = doc.value("status", "ok") == "ok" ? 200 : 400;
  res.set_content(doc.dump(), "application/json");
}

}  // namespace

struct BridgeServer::Impl {
  Kernel& kernel;
  ServerOptions options;
  httplib::Server http;
  std::thread listener;
  std::thread sweeper;
  std::mutex mutex;
  std::condition_variable wake;
  bool stopping = false;
  std::atomic<bool> stopped{false};

  Impl(Kernel& k, ServerOptions o) : kernel(k), options(std::move(o)) {}

  void routes() {
    const std::size_t threads = options.threads;
    http.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
    http.set_keep_alive_timeout(1);
    // httplib's default adds SO_REUSEPORT, which would let a second server
    // share an occupied port.
    http.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes),
                 sizeof(yes));
    });
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"}});

    http.Get(std::string(kWelcomePath), [this](const httplib::Request&, httplib::Response& res) {
      res.set_content(to_json(kernel.handshake()).dump(), "application/json");
    });

    http.Post(std::string(kEvalPath), [this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, kernel.handle_eval(std::string_view(req.body)));
    });

    http.Post(std::string(kReplyPath),
              [this](const httplib::Request& req, httplib::Response& res) {
                send_json(res, kernel.handle_reply(req.body));
              });

    http.Get(std::string(kSsePath), [this](const httplib::Request& req, httplib::Response& res) {
      DvpId id = 0;
      try {
        const std::string text = req.get_param_value("dvpId");
        std::size_t used = 0;
        id = std::stoull(text, &used);
        if (text.empty() || used != text.size()) throw std::invalid_argument("dvpId");
        kernel.hub().require_registered(id);
      } catch (const Error& e) {
        send_json(res, error_reply(e));
        return;
      } catch (const std::exception&) {
        send_json(res, error_reply(SchemaError(ErrorKind::kSchema, "/dvpId",
                                               "missing or malformed dvpId parameter")));
        return;
      }
      auto stream = kernel.hub().open_stream(id);
      const auto keepalive = options.keepalive;
      res.set_header("Cache-Control", "no-cache");
      res.set_chunked_content_provider(
          "text/event-stream",
          [stream, keepalive](std::size_t, httplib::DataSink& sink) {
            auto frame = stream->pop(keepalive);
            if (frame) return sink.write(frame->data(), frame->size());
            if (stream->closed()) {
              sink.done();
              return true;
            }
            static constexpr std::string_view kComment = ": keepalive\n\n";
            return sink.write(kComment.data(), kComment.size());
          },
          [this, id, stream](bool) { kernel.hub().release_stream(id, stream); });
    });

    if (!options.static_dir.empty() && std::filesystem::is_directory(options.static_dir)) {
      http.set_mount_point("/ui", options.static_dir);
    }
  }

  void sweep_loop() {
    std::unique_lock lock(mutex);
    while (!stopping) {
      wake.wait_for(lock, std::chrono::seconds(1));
      if (stopping) break;
      kernel.replies().sweep();
    }
  }
};

BridgeServer::BridgeServer(Kernel& kernel, ServerOptions options)
    : impl_(std::make_unique<Impl>(kernel, std::move(options))) {
  impl_->routes();
}

BridgeServer::~BridgeServer() { stop(); }

int BridgeServer::bind() {
  if (port_ >= 0) return port_;
  auto& http = impl_->http;
  const auto& o = impl_->options;
  if (o.port == 0) {
    port_ = http.bind_to_any_port(o.host);
  } else {
    port_ = http.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (port_ < 0) {
    throw BindError(o.host, o.port,
                    "cannot bind " + o.host + ":" + std::to_string(o.port) +
                        " (address in use or not permitted)");
  }
  return port_;
}

void BridgeServer::start() {
  bind();
  if (impl_->listener.joinable()) return;
  impl_->listener = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->sweeper = std::thread([this] { impl_->sweep_loop(); });
  impl_->http.wait_until_ready();
}

void BridgeServer::run() {
  bind();
  impl_->sweeper = std::thread([this] { impl_->sweep_loop(); });
  impl_->http.listen_after_bind();
}

void BridgeServer::stop() {
  if (impl_->stopped.exchange(true)) return;
  impl_->kernel.hub().shutdown();
  {
    std::lock_guard lock(impl_->mutex);
    impl_->stopping = true;
  }
  impl_->wake.notify_all();
  // httplib only closes the listening socket of a running server, so a socket
  // that was bound but never served is run briefly to release it.
  if (port_ >= 0 && !impl_->listener.joinable() && !impl_->http.is_running()) {
    impl_->listener = std::thread([this] { impl_->http.listen_after_bind(); });
    impl_->http.wait_until_ready();
  }
  impl_->http.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
  if (impl_->sweeper.joinable()) impl_->sweeper.join();
}

std::string BridgeServer::url() const {
  return "http://" + impl_->options.host + ":" + std::to_string(port_);
}

}  // namespace dvp::bridge
