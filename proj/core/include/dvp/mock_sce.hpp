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
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dvp/bridge/kernel.hpp"
#include "dvp/bridge/messages.hpp"
#include "dvp/data_model.hpp"

namespace dvp::mock {

/// State of one scripted SCE. `log` holds every wire message in order as
/// {"step", "direction": "out"|"in", "endpoint", "body"} and is append-only.
struct MockSession {
  std::optional<bridge::DvpId> dvp_id;
  std::map<std::string, bridge::Variable> variables;
  Json log = Json::array();
};

struct ScriptResult {
  MockSession session;
  bool ok = false;
  /// Index into "steps" of the step that failed.
  std::optional<std::size_t> failed_step;
  std::string error;
  std::size_t steps_run = 0;
};

struct ScriptOptions {
  /// Used by await_selection when the step gives no timeout_ms.
  std::chrono::milliseconds await_timeout = bridge::kDefaultReplyTimeout;
};

/// Runs {"steps": [...]} against the bridge at \p server_url. Step ops:
///   connect | disconnect
///   store {name, data | csv | random: {rows, cols, seed}}
///   figure.add {source, ...figure arguments}
///   await_selection {source, timeout_ms?}
///   fetch {name, expect_count?}
///   eval {expr, expect?}
///   command {name, payload}
/// Never throws for protocol problems; they end the run at the failing step.
ScriptResult run_script(const std::string& server_url, const Json& script,
                        ScriptOptions options = {});

/// Quantitative columns x1..xc of uniform [0, 1) values.
DataSource random_datasource(std::size_t rows, std::size_t cols, std::uint64_t seed,
                             std::string name = "random");

/// Renumbers dvp, request, figure and group ids in order of first appearance
/// so transcripts from different server runs compare equal.
Json canonicalize(const Json& transcript);

}  // namespace dvp::mock
