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
#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "dvp/bridge/hub.hpp"
#include "dvp/bridge/messages.hpp"
#include "dvp/bridge/reply_table.hpp"
#include "dvp/bridge/sce_backend.hpp"
#include "dvp/data_model.hpp"
#include "dvp/render/svg.hpp"
#include "dvp/selection.hpp"

namespace dvp::bridge {

/// A value in the kernel's variable table.
using Variable = std::variant<std::shared_ptr<const DataSource>, double, RowIndexSet>;

/// DataSource document, plain number, or {"indices":[...]}.
Json variable_to_json(const Variable& value);
/// Throws SchemaError with kind kType for payloads of the wrong shape.
Variable variable_from_json(const Json& doc);

/// Runs submitted tasks one at a time, in submission order, on its own thread.
class Coordinator {
 public:
  Coordinator();
  ~Coordinator();
  Coordinator(const Coordinator&) = delete;
  Coordinator& operator=(const Coordinator&) = delete;

  template <class F>
  auto submit(F&& task) -> std::future<std::invoke_result_t<F>> {
    using R = std::invoke_result_t<F>;
    auto packaged = std::make_shared<std::packaged_task<R()>>(std::forward<F>(task));
    auto future = packaged->get_future();
    enqueue([packaged] { (*packaged)(); });
    return future;
  }

  /// submit(task).get(), rethrowing the task's exception.
  template <class F>
  auto run(F&& task) -> std::invoke_result_t<F> {
    return submit(std::forward<F>(task)).get();
  }

 private:
  void enqueue(std::function<void()> task);
  void loop();

  std::mutex mutex_;
  std::condition_variable ready_;
  std::deque<std::function<void()>> tasks_;
  bool stopping_ = false;
  std::thread worker_;
};

enum class FigureKind { kParcoords, kScene };

struct FigureInfo {
  FigureId id = 0;
  FigureKind kind = FigureKind::kParcoords;
  /// Variable name of the bound DataSource.
  std::string source;
  std::vector<DvpId> owners;
};

struct KernelOptions {
  std::chrono::milliseconds default_timeout = kDefaultReplyTimeout;
  ReplyTable::Clock::duration reply_hold = kReplyHold;
  render::CanvasSize figure_size{800, 500};
};

/// Protocol state behind the four endpoints. Figures, selections and the
/// variable table live on a single coordinator thread; the hub and reply table
/// are shared and thread-safe.
class Kernel {
 public:
  explicit Kernel(std::shared_ptr<SceBackend> backend = std::make_shared<MockSceBackend>(),
                  KernelOptions options = {});
  ~Kernel();

  ClientHub& hub() noexcept { return hub_; }
  ReplyTable& replies() noexcept { return replies_; }
  const KernelOptions& options() const noexcept { return options_; }

  NewDVTIdMessage handshake();

  /// /sce: never throws; protocol failures become {"status":"error",...}.
  Json handle_eval(std::string_view body);
  Json handle_eval(const Json& doc);
  /// /sse-reply: never throws.
  Json handle_reply(std::string_view body);

  /// Typed entry points; these throw dvp::Error.
  Json eval(const SCEEvalMessage& message);
  RequestId send_sse(DvpId target, const std::string& command, Json payload);
  SSEReplyMessage wait_for_reply(RequestId request, DvpId dvp,
                                 std::optional<std::chrono::milliseconds> timeout = std::nullopt);
  void post_reply(SSEReplyMessage reply);

  /// Binds \p name as a store op would, without a client session.
  Json store(const std::string& name, Variable value);
  std::optional<Variable> variable(const std::string& name);
  std::vector<FigureInfo> figures();
  std::vector<GroupId> visible_groups(FigureId figure);

 private:
  struct State;

  Json command(DvpId sender, const std::string& name, const Json& payload);
  void await_acks(Json& result, const Json& payload);

  std::shared_ptr<SceBackend> backend_;
  KernelOptions options_;
  ClientHub hub_;
  ReplyTable replies_;
  std::unique_ptr<State> state_;
  // Declared last: joined before the state it touches is destroyed.
  Coordinator coordinator_;
};

}  // namespace dvp::bridge
