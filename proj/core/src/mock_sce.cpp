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

#include "dvp/mock_sce.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "dvp/bridge/client.hpp"
#include "dvp/csv.hpp"
#include "dvp/wire.hpp"

namespace dvp::mock {

using bridge::BridgeClient;
using bridge::DvpId;
using bridge::SSEMessage;
using bridge::SSEReplyMessage;

DataSource random_datasource(std::size_t rows, std::size_t cols, std::uint64_t seed,
                             std::string name) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<std::vector<double>> values(cols, std::vector<double>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) values[c][r] = uniform(rng);
  }
  std::vector<Column> columns;
  columns.reserve(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    columns.push_back(Column::quantitative("x" + std::to_string(c + 1), std::move(values[c])));
  }
  return DataSource(std::move(name), std::move(columns));
}

namespace {

/// A failed step: protocol error, bad expectation, or timeout.
struct StepFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StepFailure("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class Runner {
 public:
  Runner(const std::string& url, ScriptOptions options) : client_(url), options_(options) {}

  void step(std::size_t index, const Json& spec) {
    index_ = index;
    if (!spec.is_object() || !spec.contains("op") || !spec.at("op").is_string()) {
      throw StepFailure("step needs a string \"op\"");
    }
    const std::string op = spec.at("op").get<std::string>();
    if (op == "connect") {
      connect();
    } else if (op == "disconnect") {
      eval_message({{"op", "disconnect"}});
      subscription_.reset();
    } else if (op == "store") {
      store(spec);
    } else if (op == "figure.add") {
      Json payload = spec;
      payload.erase("op");
      eval_message({{"op", "command"}, {"name", "figure.add"}, {"payload", payload}});
    } else if (op == "command") {
      eval_message({{"op", "command"},
                    {"name", spec.at("name")},
                    {"payload", spec.value("payload", Json::object())}});
    } else if (op == "await_selection") {
      await_selection(spec);
    } else if (op == "fetch") {
      fetch(spec);
    } else if (op == "eval") {
      const Json result = eval_message({{"op", "eval"}, {"payload", spec.at("expr")}});
      if (spec.contains("expect") && result != spec.at("expect")) {
        throw StepFailure("eval returned " + result.dump() + ", expected " +
                          spec.at("expect").dump());
      }
    } else {
      throw StepFailure("unknown step op '" + op + "'");
    }
  }

  MockSession& session() { return session_; }

 private:
  void record(const char* direction, std::string_view endpoint, const Json& body) {
    session_.log.push_back(
        {{"step", index_}, {"direction", direction}, {"endpoint", endpoint}, {"body", body}});
  }

  DvpId id() const {
    if (!session_.dvp_id) throw StepFailure("not connected");
    return *session_.dvp_id;
  }

  /// Sends an SCEEvalMessage; returns the reply payload or throws on error status.
  Json eval_message(Json message) {
    if (message.value("op", "") != "connect" || session_.dvp_id) message["dvpId"] = id();
    record("out", bridge::kEvalPath, message);
    const Json reply = client_.post_eval(message);
    record("in", bridge::kEvalPath, reply);
    if (reply.value("status", "") != "ok") {
      const Json& p = reply.value("payload", Json::object());
      throw StepFailure(p.value("kind", "error") + ": " + p.value("message", reply.dump()));
    }
    return reply.value("payload", Json::object());
  }

  void connect() {
    record("out", bridge::kWelcomePath, Json::object());
    const auto welcome = client_.handshake();
    record("in", bridge::kWelcomePath, bridge::to_json(welcome));
    session_.dvp_id = welcome.dvp_id;
    eval_message({{"op", "connect"}});
    subscription_ = client_.subscribe(welcome.dvp_id);
  }

  void store(const Json& spec) {
    const std::string name = spec.at("name").get<std::string>();
    Json payload;
    if (spec.contains("data")) {
      payload = spec.at("data");
    } else if (spec.contains("csv")) {
      CsvOptions csv;
      csv.name = name;
      payload = datasource_to_json(load_csv(read_file(spec.at("csv").get<std::string>()), csv));
    } else if (spec.contains("random")) {
      const Json& r = spec.at("random");
      payload = datasource_to_json(random_datasource(r.at("rows").get<std::size_t>(),
                                                     r.at("cols").get<std::size_t>(),
                                                     r.value("seed", std::uint64_t{0}), name));
    } else {
      throw StepFailure("store needs data, csv or random");
    }
    eval_message({{"op", "store"}, {"name", name}, {"payload", payload}});
    session_.variables[name] = bridge::variable_from_json(payload);
  }

  void await_selection(const Json& spec) {
    if (!subscription_) throw StepFailure("no event stream; connect first");
    const std::string source = spec.at("source").get<std::string>();
    const auto timeout = spec.contains("timeout_ms")
                             ? std::chrono::milliseconds(spec.at("timeout_ms").get<std::int64_t>())
                             : options_.await_timeout;
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw StepFailure("timed out waiting for a selection on " + source);
      auto event = subscription_->next(left);
      if (!event) continue;
      record("in", bridge::kSsePath, bridge::to_json(*event));
      acknowledge(*event);
      if (event->command != "selection.set") continue;
      if (event->payload.value("source", "") != source) continue;
      const std::string variable = event->payload.value("variable", source + "_sel");
      session_.variables[variable] = rows_from_json(event->payload.at("rows"));
      return;
    }
  }

  void acknowledge(const SSEMessage& event) {
    SSEReplyMessage reply;
    reply.request_id = event.request_id;
    reply.dvp_id = id();
    record("out", bridge::kReplyPath, bridge::to_json(reply));
    const Json ack = client_.post_reply(reply);
    record("in", bridge::kReplyPath, ack);
  }

  void fetch(const Json& spec) {
    const std::string name = spec.at("name").get<std::string>();
    const Json value = eval_message({{"op", "fetch"}, {"name", name}});
    bridge::Variable variable = bridge::variable_from_json(value);
    if (spec.contains("expect_count")) {
      const auto expected = spec.at("expect_count").get<std::size_t>();
      std::size_t got = 0;
      if (const auto* rows = std::get_if<RowIndexSet>(&variable)) {
        got = rows->size();
      } else if (const auto* data = std::get_if<std::shared_ptr<const DataSource>>(&variable)) {
        got = (*data)->rows();
      } else {
        got = 1;
      }
      if (got != expected) {
        throw StepFailure("fetch " + name + " returned " + std::to_string(got) +
                          " entries, expected " + std::to_string(expected));
      }
    }
    session_.variables[name] = std::move(variable);
  }

  BridgeClient client_;
  ScriptOptions options_;
  MockSession session_;
  std::unique_ptr<bridge::Subscription> subscription_;
  std::size_t index_ = 0;
};

}  // namespace

ScriptResult run_script(const std::string& server_url, const Json& script,
                        ScriptOptions options) {
  ScriptResult result;
  const Json* steps = script.is_object() && script.contains("steps") ? &script.at("steps")
                      : script.is_array()                           ? &script
                                                                    : nullptr;
  if (!steps || !steps->is_array()) {
    result.error = "script must be {\"steps\": [...]}";
    result.failed_step = 0;
    return result;
  }
  std::optional<Runner> runner;
  try {
    runner.emplace(server_url, options);
  } catch (const std::exception& e) {
    result.error = e.what();
    result.failed_step = 0;
    return result;
  }
  for (std::size_t i = 0; i < steps->size(); ++i) {
    try {
      runner->step(i, steps->at(i));
      ++result.steps_run;
    } catch (const std::exception& e) {
      result.failed_step = i;
      result.error = e.what();
      break;
    }
  }
  result.ok = !result.failed_step.has_value();
  result.session = std::move(runner->session());
  return result;
}

namespace {

class Canonicalizer {
 public:
  Json walk(const Json& node, const std::string& key) {
    if (node.is_object()) {
      Json out = Json::object();
      for (const auto& [k, v] : node.items()) {
        if (k == "timestamp" || k == "elapsed_ms") continue;
        out[k] = walk(v, k);
      }
      return out;
    }
    if (node.is_array()) {
      Json out = Json::array();
      for (const auto& v : node) out.push_back(walk(v, key));
      return out;
    }
    if (node.is_number_integer()) {
      if (auto* table = table_for(key)) {
        const auto raw = node.get<std::uint64_t>();
        auto [it, inserted] = table->emplace(raw, table->size());
        return it->second;
      }
    }
    return node;
  }

 private:
  std::map<std::uint64_t, std::uint64_t>* table_for(const std::string& key) {
    if (key == "dvpId" || key == "target" || key == "owners" || key == "sessions") return &dvp_;
    if (key == "requestId") return &request_;
    if (key == "figureId" || key == "figures" || key == "figure") return &figure_;
    if (key == "groupId" || key == "groups" || key == "a" || key == "b" || key == "group") {
      return &group_;
    }
    return nullptr;
  }

  std::map<std::uint64_t, std::uint64_t> dvp_, request_, figure_, group_;
};

}  // namespace

Json canonicalize(const Json& transcript) { return Canonicalizer{}.walk(transcript, ""); }

}  // namespace dvp::mock
