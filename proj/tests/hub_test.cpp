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

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace dvp::bridge {
namespace {

using namespace std::chrono_literals;

Json frame_doc(const std::string& frame) { return Json::parse(frame.substr(6)); }

TEST(ClientHub, SequentialIds) {
  ClientHub hub;
  EXPECT_EQ(hub.handshake().dvp_id, 0u);
  EXPECT_EQ(hub.handshake().dvp_id, 1u);
  EXPECT_TRUE(hub.is_registered(1));
  EXPECT_FALSE(hub.is_registered(2));
  EXPECT_THROW(hub.require_registered(2), Error);
  // A fresh hub (server restart) starts over.
  ClientHub restarted;
  EXPECT_EQ(restarted.handshake().dvp_id, 0u);
}

TEST(ClientHub, ConcurrentHandshakesCoverTheRange) {
  ClientHub hub;
  std::vector<DvpId> ids(100);
  std::vector<std::thread> threads;
  for (int i = 0; i < 100; ++i) {
    threads.emplace_back([&, i] { ids[i] = hub.handshake().dvp_id; });
  }
  for (auto& t : threads) t.join();
  std::vector<DvpId> expect(100);
  std::iota(expect.begin(), expect.end(), 0);
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(ids, expect);
}

TEST(ClientHub, InterleavedHandshakesAndSendsStayDistinct) {
  ClientHub hub;
  const DvpId sink = hub.handshake().dvp_id;
  const auto stream = hub.open_stream(sink);
  std::mutex m;
  std::set<DvpId> dvps{sink};
  std::set<RequestId> reqs;
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937 rng(t);
      for (int i = 0; i < 200; ++i) {
        if (rng() % 2) {
          const DvpId id = hub.handshake().dvp_id;
          std::lock_guard lock(m);
          EXPECT_TRUE(dvps.insert(id).second);
        } else {
          const RequestId r = hub.send(sink, "ping", Json::object());
          std::lock_guard lock(m);
          EXPECT_TRUE(reqs.insert(r).second);
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(dvps.size() + reqs.size(), 1600u + 1u);
}

TEST(ClientHub, SendDeliversOneEventWithMatchingId) {
  ClientHub hub;
  const DvpId id = hub.handshake().dvp_id;
  const auto stream = hub.open_stream(id);
  const RequestId r1 = hub.send(id, "figure.add", {{"figureId", 0}});
  const RequestId r2 = hub.send(id, "figure.add", {{"figureId", 1}});
  EXPECT_LT(r1, r2);
  const auto f1 = stream->pop(100ms);
  ASSERT_TRUE(f1);
  EXPECT_EQ(frame_doc(*f1)["requestId"], r1);
  EXPECT_EQ(frame_doc(*f1)["command"], "figure.add");
  ASSERT_TRUE(stream->pop(100ms));
  EXPECT_FALSE(stream->pop(20ms));
}

TEST(ClientHub, DeliveryFailureStillConsumesTheId) {
  ClientHub hub;
  const DvpId a = hub.handshake().dvp_id;
  const DvpId b = hub.handshake().dvp_id;
  const auto stream = hub.open_stream(a);
  const RequestId before = hub.send(a, "x", {});
  try {
    hub.send(b, "x", {});
    FAIL() << "delivered without a stream";
  } catch (const DeliveryError& e) {
    EXPECT_EQ(e.request_id(), before + 1);
  }
  EXPECT_EQ(hub.send(a, "x", {}), before + 2);
  EXPECT_EQ(hub.issued_requests(), before + 3);
  EXPECT_THROW(hub.send(99, "x", {}), Error);
}

TEST(ClientHub, PerClientOrderingUnderLoad) {
  ClientHub hub;
  const DvpId id = hub.handshake().dvp_id;
  const auto stream = hub.open_stream(id);
  std::thread producer([&] {
    for (int i = 0; i < 1000; ++i) hub.send(id, "n", {{"i", i}});
  });
  for (int i = 0; i < 1000; ++i) {
    const auto f = stream->pop(2000ms);
    ASSERT_TRUE(f) << i;
    EXPECT_EQ(frame_doc(*f)["payload"]["i"], i);
  }
  producer.join();
}

TEST(ClientHub, SessionsAndStreams) {
  ClientHub hub;
  const DvpId a = hub.handshake().dvp_id;
  const DvpId b = hub.handshake().dvp_id;
  hub.set_session(a, true);
  EXPECT_TRUE(hub.in_session(a));
  EXPECT_FALSE(hub.in_session(b));
  EXPECT_EQ(hub.sessions(), (std::vector<DvpId>{a}));

  const auto old_stream = hub.open_stream(b);
  const auto new_stream = hub.open_stream(b);
  EXPECT_TRUE(old_stream->closed());
  hub.release_stream(b, old_stream);
  EXPECT_TRUE(hub.has_stream(b));
  EXPECT_EQ(hub.streaming_clients(), (std::vector<DvpId>{b}));
  hub.release_stream(b, new_stream);
  EXPECT_FALSE(hub.has_stream(b));
}

TEST(ClientHub, ShutdownClosesStreams) {
  ClientHub hub;
  const DvpId id = hub.handshake().dvp_id;
  const auto stream = hub.open_stream(id);
  hub.send(id, "x", {});
  hub.shutdown();
  EXPECT_TRUE(hub.stopping());
  EXPECT_THROW(hub.send(id, "x", {}), Error);
  // Frames queued before the close still drain.
  EXPECT_TRUE(stream->pop(10ms));
  EXPECT_FALSE(stream->pop(10ms));
  EXPECT_TRUE(stream->closed());
}

}  // namespace
}  // namespace dvp::bridge
