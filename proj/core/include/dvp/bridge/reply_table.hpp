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
#include <map>
#include <mutex>
#include <optional>

#include "dvp/bridge/messages.hpp"

namespace dvp::bridge {

inline constexpr std::chrono::seconds kReplyHold{60};
inline constexpr std::chrono::seconds kDefaultReplyTimeout{30};

/// Correlation table between posted SSE replies and blocked waiters.
///
/// A reply is consumed at most once. Replies nobody has taken (late, foreign,
/// or for an unknown request) stay held until sweep() drops them after the
/// hold period. A second reply for a request id already seen is rejected.
class ReplyTable {
 public:
  using Clock = std::chrono::steady_clock;

  explicit ReplyTable(Clock::duration hold = kReplyHold) : hold_(hold) {}

  /// Throws Error(kDuplicate) if the request id was already replied to.
  void post(SSEReplyMessage reply, Clock::time_point now = Clock::now());

  /// Blocks the caller until a reply for (request, dvp) arrives or the
  /// timeout passes. Throws TimeoutError carrying the request id.
  SSEReplyMessage wait(RequestId request, DvpId dvp,
                       Clock::duration timeout = kDefaultReplyTimeout);

  std::optional<SSEReplyMessage> try_take(RequestId request, DvpId dvp);

  /// Drops held replies and seen-ids older than the hold period.
  std::size_t sweep(Clock::time_point now = Clock::now());

  std::size_t held() const;
  bool is_held(RequestId request) const;

 private:
  struct Entry {
    SSEReplyMessage reply;
    Clock::time_point arrived;
  };

  std::optional<SSEReplyMessage> take_locked(RequestId request, DvpId dvp);

  Clock::duration hold_;
  mutable std::mutex mutex_;
  std::condition_variable arrived_;
  std::map<RequestId, Entry> held_;
  std::map<RequestId, Clock::time_point> seen_;
};

}  // namespace dvp::bridge
