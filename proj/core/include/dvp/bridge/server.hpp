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
#include <cstddef>
#include <memory>
#include <string>

#include "dvp/bridge/kernel.hpp"
#include "dvp/error.hpp"

namespace dvp::bridge {

/// The listening socket could not be bound.
class BindError : public Error {
 public:
  BindError(std::string host, int port, const std::string& message)
      : Error(ErrorKind::kInvalidArgument, message), host_(std::move(host)), port_(port) {}
  const std::string& host() const noexcept { return host_; }
  int port() const noexcept { return port_; }

 private:
  std::string host_;
  int port_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  /// 0 picks a free port.
  int port = 0;
  /// Served under /ui when non-empty and present.
  std::string static_dir;
  /// Idle SSE streams get a comment line this often.
  std::chrono::milliseconds keepalive{250};
  std::size_t threads = 64;
};

/// HTTP/1.1 transport for a Kernel: GET /welcome, POST /sce, GET /sse?dvpId=N,
/// POST /sse-reply.
class BridgeServer {
 public:
  explicit BridgeServer(Kernel& kernel, ServerOptions options = {});
  ~BridgeServer();
  BridgeServer(const BridgeServer&) = delete;
  BridgeServer& operator=(const BridgeServer&) = delete;

  /// Binds the socket and returns the port. Throws BindError.
  int bind();
  /// bind() if needed, then serve on a background thread.
  void start();
  /// bind() if needed, then serve on the calling thread until stop().
  void run();
  /// Closes every event stream and stops accepting. Idempotent.
  void stop();

  int port() const noexcept { return port_; }
  /// "http://host:port"
  std::string url() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = -1;
};

}  // namespace dvp::bridge
