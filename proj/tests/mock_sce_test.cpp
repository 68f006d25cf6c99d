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

#include <gtest/gtest.h>

#include "harness.hpp"

namespace dvp::mock {
namespace {

using namespace std::chrono_literals;

class MockSceTest : public ::testing::Test {
 protected:
  void SetUp() override { server.start(); }
  void TearDown() override { server.stop(); }

  bridge::Kernel kernel;
  bridge::BridgeServer server{kernel};
};

TEST_F(MockSceTest, HappyPath) {
  const Json script = Json::parse(R"({"steps":[
      {"op":"connect"},
      {"op":"store","name":"d","random":{"rows":20,"cols":3,"seed":1}},
      {"op":"eval","expr":"2+2","expect":4},
      {"op":"fetch","name":"d","expect_count":20},
      {"op":"disconnect"}]})");
  const auto result = run_script(server.url(), script);
  ASSERT_TRUE(result.ok) << result.error;
  EXPECT_EQ(result.steps_run, 5u);
  EXPECT_FALSE(result.failed_step);
  ASSERT_TRUE(result.session.dvp_id);
  const auto* d = std::get_if<std::shared_ptr<const DataSource>>(&result.session.variables.at("d"));
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(**d, random_datasource(20, 3, 1, "d"));

  // Every step that talks to /sce logs one request and one reply.
  std::size_t out = 0, in = 0;
  for (const auto& entry : result.session.log) {
    (entry["direction"] == "out" ? out : in) += 1;
    EXPECT_TRUE(entry.contains("step"));
    EXPECT_TRUE(entry.contains("endpoint"));
  }
  EXPECT_GT(out, 0u);
  EXPECT_EQ(out, in);
}

TEST_F(MockSceTest, BareArrayScript) {
  const auto result =
      run_script(server.url(), Json::parse(R"([{"op":"connect"},{"op":"eval","expr":"1+1"}])"));
  EXPECT_TRUE(result.ok) << result.error;
  EXPECT_EQ(result.steps_run, 2u);
}

TEST_F(MockSceTest, FailingStepIsReported) {
  const auto result = run_script(server.url(), Json::parse(R"({"steps":[
      {"op":"connect"},
      {"op":"fetch","name":"missing"},
      {"op":"disconnect"}]})"));
  EXPECT_FALSE(result.ok);
  EXPECT_EQ(result.failed_step, 1u);
  EXPECT_NE(result.error.find("unbound"), std::string::npos) << result.error;
  EXPECT_EQ(result.steps_run, 1u);
}

TEST_F(MockSceTest, AwaitTimeoutNamesTheStep) {
  const auto start = std::chrono::steady_clock::now();
  const auto result = run_script(server.url(), Json::parse(R"({"steps":[
      {"op":"connect"},
      {"op":"await_selection","source":"d","timeout_ms":200}]})"));
  const auto waited = std::chrono::steady_clock::now() - start;
  EXPECT_FALSE(result.ok);
  EXPECT_EQ(result.failed_step, 1u);
  EXPECT_NE(result.error.find("timed out"), std::string::npos);
  EXPECT_GE(waited, 200ms);
  EXPECT_LT(waited, 5s);
}

TEST(MockSce, UnreachableServerFailsTheFirstStep) {
  int port = 0;
  {
    bridge::Kernel k;
    bridge::BridgeServer s(k);
    port = s.bind();
  }
  const auto result =
      run_script("http://127.0.0.1:" + std::to_string(port), Json::parse(R"([{"op":"connect"}])"));
  EXPECT_FALSE(result.ok);
  EXPECT_EQ(result.failed_step, 0u);
}

TEST(MockSce, SelectionLoopEndsWithTheVariable) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 3; i < 300; i += 8) rows.push_back(i);
  ASSERT_EQ(rows.size(), 38u);
  rows.pop_back();
  const auto outcome = testing::run_loop(rows, 1000, 5);
  ASSERT_TRUE(outcome.result.ok) << outcome.result.error;
  EXPECT_EQ(outcome.figure["rows"], 1000);
  const auto& var = outcome.result.session.variables.at("d_sel");
  EXPECT_EQ(std::get<RowIndexSet>(var).rows(), rows);
}

TEST(MockSce, TranscriptsReplayIdentically) {
  const std::vector<std::size_t> rows{0, 2, 4, 6};
  const auto first = testing::run_loop(rows, 30, 3);
  const auto second = testing::run_loop(rows, 30, 3);
  ASSERT_TRUE(first.result.ok) << first.result.error;
  ASSERT_TRUE(second.result.ok) << second.result.error;
  EXPECT_EQ(canonicalize(first.result.session.log), canonicalize(second.result.session.log));
}

TEST(MockSce, CanonicalizeRenumbersIds) {
  const Json a = Json::parse(
      R"([{"body":{"dvpId":7,"requestId":40,"figureId":3,"timestamp":1}},
          {"body":{"owners":[7,9],"requestId":41,"groups":[12]}}])");
  const Json expect = Json::parse(
      R"([{"body":{"dvpId":0,"requestId":0,"figureId":0}},
          {"body":{"owners":[0,1],"requestId":1,"groups":[0]}}])");
  EXPECT_EQ(canonicalize(a), expect);
}

TEST(MockSce, RandomDatasourceIsSeeded) {
  const auto a = random_datasource(10, 2, 5);
  EXPECT_EQ(a, random_datasource(10, 2, 5));
  EXPECT_NE(a, random_datasource(10, 2, 6));
  EXPECT_EQ(a.column(0).name(), "x1");
  for (double v : a.column(1).values()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

}  // namespace
}  // namespace dvp::mock
