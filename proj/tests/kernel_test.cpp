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

#include "dvp/bridge/kernel.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <thread>

#include "dvp/parcoords/queries.hpp"
#include "dvp/wire.hpp"

namespace dvp::bridge {
namespace {

using namespace std::chrono_literals;

std::shared_ptr<const DataSource> matrix(std::size_t n, std::size_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 10);
  std::vector<Column> cols;
  for (std::size_t c = 0; c < p; ++c) {
    std::vector<double> v(n);
    for (auto& x : v) x = g(rng);
    cols.push_back(Column::quantitative("c" + std::to_string(c), std::move(v)));
  }
  return std::make_shared<const DataSource>("m", std::move(cols));
}

Json next_event(EventStream& stream, std::chrono::milliseconds timeout = 1000ms) {
  const auto frame = stream.pop(timeout);
  if (!frame) return Json();
  return Json::parse(frame->substr(6));
}

class KernelTest : public ::testing::Test {
 protected:
  Json call(Json doc) { return kernel.handle_eval(doc); }
  Json ok(Json doc) {
    Json reply = call(std::move(doc));
    EXPECT_EQ(reply["status"], "ok") << reply.dump();
    return reply["payload"];
  }
  Json command(DvpId sender, const std::string& name, Json payload) {
    return call({{"dvpId", sender}, {"op", "command"}, {"name", name}, {"payload", payload}});
  }
  DvpId connect() { return ok({{"op", "connect"}})["dvpId"].get<DvpId>(); }

  Kernel kernel;
};

TEST_F(KernelTest, StoreAndFetchLargeMatrix) {
  const DvpId sce = connect();
  const auto data = matrix(9000, 9, 1);
  const Json stored = ok({{"dvpId", sce}, {"op", "store"}, {"name", "slov"},
                          {"payload", datasource_to_json(*data)}});
  EXPECT_EQ(stored["rows"], 9000);
  EXPECT_EQ(stored["cols"], 9);
  const Json fetched = ok({{"dvpId", sce}, {"op", "fetch"}, {"name", "slov"}});
  EXPECT_EQ(datasource_from_json(fetched), *data);
}

TEST_F(KernelTest, StoreScalarsAndRowSets) {
  const DvpId sce = connect();
  ok({{"dvpId", sce}, {"op", "store"}, {"name", "k"}, {"payload", 2.5}});
  ok({{"dvpId", sce}, {"op", "store"}, {"name", "r"}, {"payload", {{"indices", {4, 1}}}}});
  EXPECT_EQ(ok({{"dvpId", sce}, {"op", "fetch"}, {"name", "k"}}), Json(2.5));
  EXPECT_EQ(ok({{"dvpId", sce}, {"op", "fetch"}, {"name", "r"}}),
            Json::parse(R"({"indices":[1,4]})"));
}

TEST_F(KernelTest, ErrorReplies) {
  const DvpId sce = connect();
  auto kind = [](const Json& reply) {
    EXPECT_EQ(reply["status"], "error");
    return reply["payload"]["kind"].get<std::string>();
  };
  EXPECT_EQ(kind(call({{"dvpId", sce}, {"op", "fetch"}, {"name", "nothing"}})), "unbound");
  EXPECT_EQ(kind(call({{"dvpId", 42}, {"op", "fetch"}, {"name", "x"}})), "protocol");
  EXPECT_EQ(kind(call({{"dvpId", sce}, {"op", "store"}, {"name", "x"}, {"payload", "text"}})),
            "type");
  EXPECT_EQ(kind(call({{"dvpId", sce}, {"op", "store"}, {"name", "x"}, {"payload", {1, 2}}})),
            "type");
  const Json missing = call({{"dvpId", sce}, {"op", "store"}, {"payload", 1}});
  EXPECT_EQ(kind(missing), "schema");
  EXPECT_EQ(missing["payload"]["path"], "/name");
  EXPECT_NE(missing["payload"]["message"].get<std::string>().find("name"), std::string::npos);
  const Json bad_cell = call({{"dvpId", sce}, {"op", "store"}, {"name", "x"},
                              {"payload", Json::parse(R"({"name":"d","columns":[{"name":"a",
                                  "type":"quantitative"}],"rows":[[1],["two"]]})")}});
  EXPECT_EQ(bad_cell["payload"]["path"], "/payload/rows/1/0");
  EXPECT_EQ(kind(kernel.handle_eval(std::string_view("{not json"))), "schema");
  EXPECT_EQ(kind(command(sce, "figure.fly", Json::object())), "unsupported");
}

TEST_F(KernelTest, EvalGoesToTheBackend) {
  const DvpId sce = connect();
  EXPECT_EQ(ok({{"dvpId", sce}, {"op", "eval"}, {"payload", "2+2"}}), Json(4));
  EXPECT_EQ(call({{"dvpId", sce}, {"op", "eval"}, {"payload", "2/0"}})["status"], "error");
}

TEST_F(KernelTest, ConnectAndDisconnect) {
  const DvpId viz = kernel.handshake().dvp_id;
  EXPECT_EQ(ok({{"op", "connect"}, {"dvpId", viz}})["dvpId"], viz);
  EXPECT_TRUE(kernel.hub().in_session(viz));
  const auto stream = kernel.hub().open_stream(viz);
  ok({{"op", "disconnect"}, {"dvpId", viz}});
  EXPECT_FALSE(kernel.hub().in_session(viz));
  EXPECT_TRUE(stream->closed());
  EXPECT_EQ(call({{"op", "connect"}, {"dvpId", 77}})["payload"]["kind"], "protocol");
}

TEST_F(KernelTest, SendAndReplyRoundTrip) {
  const DvpId viz = kernel.handshake().dvp_id;
  const auto stream = kernel.hub().open_stream(viz);
  const RequestId r = kernel.send_sse(viz, "eval.request", {{"x", 1}});
  const Json ev = next_event(*stream);
  EXPECT_EQ(ev["requestId"], r);
  std::thread replier([&] {
    std::this_thread::sleep_for(30ms);
    const Json ack = kernel.handle_reply(
        Json{{"requestId", r}, {"dvpId", viz}, {"status", "ok"}, {"payload", {{"y", 2}}}}.dump());
    EXPECT_EQ(ack["status"], "ok");
  });
  const auto reply = kernel.wait_for_reply(r, viz, 1000ms);
  replier.join();
  EXPECT_EQ(reply.payload["y"], 2);
  const Json dup = kernel.handle_reply(
      Json{{"requestId", r}, {"dvpId", viz}, {"status", "ok"}, {"payload", {}}}.dump());
  EXPECT_EQ(dup["payload"]["kind"], "duplicate");
  const Json foreign = kernel.handle_reply(
      Json{{"requestId", 1000}, {"dvpId", 55}, {"status", "ok"}, {"payload", {}}}.dump());
  EXPECT_EQ(foreign["payload"]["kind"], "protocol");
  // Unknown request from a registered client is held.
  EXPECT_EQ(kernel.handle_reply(Json{{"requestId", 1000}, {"dvpId", viz}, {"status", "ok"},
                                     {"payload", {}}}.dump())["status"],
            "ok");
  EXPECT_TRUE(kernel.replies().is_held(1000));
}

class FigureTest : public KernelTest {
 protected:
  void SetUp() override {
    sce = connect();
    viz = kernel.handshake().dvp_id;
    viz_stream = kernel.hub().open_stream(viz);
    sce_stream = kernel.hub().open_stream(sce);
    data = matrix(200, 4, 3);
    ok({{"dvpId", sce}, {"op", "store"}, {"name", "d"}, {"payload", datasource_to_json(*data)}});
  }

  Json add_figure() {
    const Json reply = command(sce, "figure.add", {{"source", "d"}});
    EXPECT_EQ(reply["status"], "ok") << reply.dump();
    return reply["payload"];
  }

  DvpId sce = 0;
  DvpId viz = 0;
  std::shared_ptr<EventStream> viz_stream;
  std::shared_ptr<EventStream> sce_stream;
  std::shared_ptr<const DataSource> data;
};

TEST_F(FigureTest, FigureAddReachesTheVisualizerOnce) {
  const Json added = add_figure();
  ASSERT_EQ(added["deliveries"].size(), 1u);
  EXPECT_EQ(added["deliveries"][0]["dvpId"], viz);
  const Json ev = next_event(*viz_stream);
  EXPECT_EQ(ev["command"], "figure.add");
  EXPECT_EQ(ev["requestId"], added["deliveries"][0]["requestId"]);
  EXPECT_EQ(ev["payload"]["figureId"], added["figureId"]);
  EXPECT_EQ(ev["payload"]["axes"], Json({"c0", "c1", "c2", "c3"}));
  EXPECT_EQ(ev["payload"]["rows"], 200);
  EXPECT_TRUE(ev["payload"]["svg"].get<std::string>().starts_with("<?xml"));
  EXPECT_TRUE(next_event(*viz_stream, 20ms).is_null());
  // The sender does not get its own figure.
  EXPECT_TRUE(next_event(*sce_stream, 20ms).is_null());
  ASSERT_EQ(kernel.figures().size(), 1u);
  EXPECT_EQ(kernel.figures()[0].owners, std::vector<DvpId>{viz});
}

TEST_F(FigureTest, AwaitCollectsAcks) {
  std::thread client([&] {
    const Json ev = next_event(*viz_stream);
    kernel.post_reply(parse_reply(
        {{"requestId", ev["requestId"]}, {"dvpId", viz}, {"status", "ok"}, {"payload", {}}}));
  });
  const Json reply =
      command(sce, "figure.add", {{"source", "d"}, {"await", true}, {"timeout_ms", 2000}});
  client.join();
  ASSERT_EQ(reply["status"], "ok") << reply.dump();
  ASSERT_EQ(reply["payload"]["acks"].size(), 1u);
  EXPECT_EQ(reply["payload"]["acks"][0]["dvpId"], viz);

  const Json timed_out =
      command(sce, "figure.add", {{"source", "d"}, {"await", true}, {"timeout_ms", 50}});
  EXPECT_EQ(timed_out["payload"]["kind"], "timeout");
}

TEST_F(FigureTest, ExplicitTargetWithoutStreamFails) {
  const DvpId idle = kernel.handshake().dvp_id;
  const Json reply = command(sce, "figure.add", {{"source", "d"}, {"target", idle}});
  EXPECT_EQ(reply["payload"]["kind"], "delivery");
  EXPECT_TRUE(kernel.figures().empty());
}

TEST_F(FigureTest, SelectionSetBecomesAVariableAndIsLinked) {
  const Json added = add_figure();
  next_event(*viz_stream);
  const FigureId fig = added["figureId"];
  const Json sel = command(viz, "selection.set", {{"figure", fig}, {"rows", {5, 1, 9}}});
  ASSERT_EQ(sel["status"], "ok") << sel.dump();
  EXPECT_EQ(sel["payload"]["name"], "d_sel");
  EXPECT_EQ(sel["payload"]["count"], 3);
  const auto var = kernel.variable("d_sel");
  ASSERT_TRUE(var);
  EXPECT_EQ(std::get<RowIndexSet>(*var), RowIndexSet::from_sorted({1, 5, 9}));

  const Json created = next_event(*viz_stream);
  EXPECT_EQ(created["command"], "selection.created");
  EXPECT_EQ(created["payload"]["rows"]["indices"], Json({1, 5, 9}));
  EXPECT_EQ(created["payload"]["alpha"], 0.5);
  const Json to_sce = next_event(*sce_stream);
  EXPECT_EQ(to_sce["command"], "selection.set");
  EXPECT_EQ(to_sce["payload"]["variable"], "d_sel");
  EXPECT_EQ(kernel.visible_groups(fig).size(), 1u);

  // Same name again replaces the group.
  command(viz, "selection.set", {{"figure", fig}, {"rows", {2}}});
  EXPECT_EQ(kernel.visible_groups(fig).size(), 1u);
  EXPECT_EQ(std::get<RowIndexSet>(*kernel.variable("d_sel")).rows(),
            std::vector<std::size_t>{2});

  const Json out_of_range = command(viz, "selection.set", {{"figure", fig}, {"rows", {200}}});
  EXPECT_EQ(out_of_range["payload"]["kind"], "selection");
}

TEST_F(FigureTest, QueriesMatchTheModel) {
  const FigureId fig = add_figure()["figureId"];
  const parcoords::ParcoordsModel model(data, {"c0", "c1", "c2", "c3"}, 1.0);

  const Json axis = command(sce, "selection.query",
                            {{"figure", fig},
                             {"query", {{"type", "axis"}, {"axis", "c1"}, {"lo", -5}, {"hi", 5}}},
                             {"name", "mid"}});
  ASSERT_EQ(axis["status"], "ok") << axis.dump();
  EXPECT_EQ(axis["payload"]["rows"]["indices"].get<std::vector<std::size_t>>(),
            model.axis_interval_query(1, {-5, 5}).rows());
  EXPECT_TRUE(kernel.variable("mid").has_value());

  const Json brush = command(
      sce, "selection.query",
      {{"figure", fig},
       {"query", {{"type", "brush"}, {"pair", 2}, {"x", 2.5}, {"ylo", 0.3}, {"yhi", 0.6}}},
       {"apply", false}});
  EXPECT_EQ(brush["payload"]["rows"]["indices"].get<std::vector<std::size_t>>(),
            model.brush_segment_query(2, {2.5, 0.3, 0.6}).rows());
  EXPECT_TRUE(brush["payload"].contains("candidates"));
  EXPECT_FALSE(brush["payload"].contains("groupId"));

  const Json slope = command(
      sce, "selection.query",
      {{"figure", fig}, {"query", {{"type", "slope"}, {"pair", 0}, {"lo", -0.1}, {"hi", 0.1}}},
       {"name", "flat"}});
  EXPECT_EQ(slope["payload"]["rows"]["indices"].get<std::vector<std::size_t>>(),
            model.slope_query(0, {-0.1, 0.1}).rows());

  const Json both = command(sce, "selection.combine",
                            {{"a", axis["payload"]["groupId"]},
                             {"b", slope["payload"]["groupId"]},
                             {"op", "intersect"}});
  const auto expect = set_intersection(model.axis_interval_query(1, {-5, 5}),
                                       model.slope_query(0, {-0.1, 0.1}));
  EXPECT_EQ(both["payload"]["rows"]["indices"].get<std::vector<std::size_t>>(), expect.rows());

  const Json r = command(sce, "selection.correlation",
                         {{"source", "d"}, {"a", "c0"}, {"b", "c1"}});
  EXPECT_NEAR(r["payload"]["r"].get<double>(),
              parcoords::selection_correlation(*data, RowIndexSet::all(200), "c0", "c1"), 1e-15);

  const Json bad = command(sce, "selection.query",
                           {{"figure", fig}, {"query", {{"type", "axis"}, {"axis", "zz"},
                                                        {"lo", 0}, {"hi", 1}}}});
  EXPECT_EQ(bad["payload"]["kind"], "query");
}

TEST_F(FigureTest, RestoreSwapsTheFigureData) {
  const FigureId fig = add_figure()["figureId"];
  next_event(*viz_stream);
  command(viz, "selection.set", {{"figure", fig}, {"rows", {0, 1}}});
  next_event(*viz_stream);

  const auto fresh = matrix(50, 4, 9);
  const Json stored = ok({{"dvpId", sce}, {"op", "store"}, {"name", "d"},
                          {"payload", datasource_to_json(*fresh)}});
  EXPECT_EQ(stored["figures"], Json({fig}));
  const Json update = next_event(*viz_stream);
  EXPECT_EQ(update["command"], "figure.update");
  EXPECT_EQ(update["payload"]["rows"], 50);
  EXPECT_TRUE(kernel.visible_groups(fig).empty());

  const parcoords::ParcoordsModel model(fresh, {"c0", "c1", "c2", "c3"}, 1.0);
  const Json q = command(sce, "selection.query",
                         {{"figure", fig},
                          {"query", {{"type", "slope"}, {"pair", 1}, {"lo", 0}, {"hi", 1}}},
                          {"apply", false}});
  EXPECT_EQ(q["payload"]["rows"]["indices"].get<std::vector<std::size_t>>(),
            model.slope_query(1, {0, 1}).rows());

  // Data that no longer fits the figure is rejected and nothing changes.
  const Json narrow = call({{"dvpId", sce}, {"op", "store"}, {"name", "d"},
                            {"payload", datasource_to_json(*matrix(5, 2, 1))}});
  EXPECT_EQ(narrow["status"], "error");
  EXPECT_EQ(ok({{"dvpId", sce}, {"op", "fetch"}, {"name", "d"}})["rows"].size(), 50u);
  const Json scalar = call({{"dvpId", sce}, {"op", "store"}, {"name", "d"}, {"payload", 1}});
  EXPECT_EQ(scalar["payload"]["kind"], "type");
}

TEST_F(FigureTest, SceneFiguresAndListing) {
  const Json added = command(sce, "figure.add",
                             {{"source", "d"}, {"kind", "scene"},
                              {"script", "ELEMENT: point(position(c0*c1))\n"},
                              {"width", 320}, {"height", 200}});
  ASSERT_EQ(added["status"], "ok") << added.dump();
  const FigureId fig = added["payload"]["figureId"];
  const Json svg = command(sce, "figure.svg", {{"figure", fig}});
  EXPECT_NE(svg["payload"]["svg"].get<std::string>().find("width=\"320\""), std::string::npos);
  const Json listed = command(sce, "figure.list", Json::object());
  ASSERT_EQ(listed["payload"]["figures"].size(), 1u);
  EXPECT_EQ(listed["payload"]["figures"][0]["kind"], "scene");
  const Json bad = command(sce, "figure.add",
                           {{"source", "d"}, {"kind", "scene"}, {"script", "ELEMENT: point("}});
  EXPECT_EQ(bad["payload"]["kind"], "parse");
  command(sce, "figure.close", {{"figure", fig}});
  EXPECT_TRUE(kernel.figures().empty());
  EXPECT_EQ(command(sce, "figure.svg", {{"figure", fig}})["status"], "error");
}

TEST(Coordinator, RunsInSubmissionOrder) {
  Coordinator c;
  std::vector<int> seen;
  std::vector<std::future<void>> pending;
  for (int i = 0; i < 100; ++i) pending.push_back(c.submit([&, i] { seen.push_back(i); }));
  for (auto& f : pending) f.get();
  std::vector<int> expect(100);
  std::iota(expect.begin(), expect.end(), 0);
  EXPECT_EQ(seen, expect);
  EXPECT_THROW(c.run([]() -> int { throw Error(ErrorKind::kQuery, "x"); }), Error);
  EXPECT_EQ(c.run([] { return 5; }), 5);
}

TEST(VariableJson, Shapes) {
  EXPECT_EQ(variable_to_json(Variable(1.5)), Json(1.5));
  EXPECT_EQ(std::get<RowIndexSet>(variable_from_json(Json::parse(R"({"indices":[3,0]})"))).rows(),
            (std::vector<std::size_t>{0, 3}));
  EXPECT_THROW(variable_from_json(Json("x")), SchemaError);
  EXPECT_THROW(variable_from_json(Json::parse(R"({"indices":[-1]})")), Error);
}

}  // namespace
}  // namespace dvp::bridge
