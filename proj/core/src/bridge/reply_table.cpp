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

#include "dvp/bridge/reply_table.hpp"

namespace dvp::bridge {

void ReplyTable::post(SSEReplyMessage reply, Clock::time_point now) {
  {
    std::lock_guard lock(mutex_);
    const RequestId id = reply.request_id;
    if (seen_.contains(id)) {
      throw Error(ErrorKind::kDuplicate, "duplicate reply for request " + std::to_string(id));
    }
    seen_.emplace(id, now);
    held_.emplace(id, Entry{std::move(reply), now});
  }
  arrived_.notify_all();
}

std::optional<SSEReplyMessage> ReplyTable::take_locked(RequestId request, DvpId dvp) {
  auto it = held_.find(request);
  if (it == held_.end() || it->second.reply.dvp_id != dvp) return std::nullopt;
  SSEReplyMessage reply = std::move(it->second.reply);
  held_.erase(it);
  return reply;
}

SSEReplyMessage ReplyTable::wait(RequestId request, DvpId dvp, Clock::duration timeout) {
  const auto deadline = Clock::now() + timeout;
  std::unique_lock lock(mutex_);
  while (true) {
    if (auto reply = take_locked(request, dvp)) return std::move(*reply);
    if (arrived_.wait_until(lock, deadline) == std::cv_status::timeout) {
      if (auto reply = take_locked(request, dvp)) return std::move(*reply);
      throw TimeoutError(request);
    }
  }
}

std::optional<SSEReplyMessage> ReplyTable::try_take(RequestId request, DvpId dvp) {
  std::lock_guard lock(mutex_);
  return take_locked(request, dvp);
}

std::size_t ReplyTable::sweep(Clock::time_point now) {
  std::lock_guard lock(mutex_);
  std::size_t dropped = std::erase_if(
      held_, [&](const auto& entry) { return now - entry.second.arrived >= hold_; });
  std::erase_if(seen_, [&](const auto& entry) {
    return now - entry.second >= hold_ && !held_.contains(entry.first);
  });
  return dropped;
}

std::size_t ReplyTable::held() const {
  std::lock_guard lock(mutex_);
  return held_.size();
}

bool ReplyTable::is_held(RequestId request) const {
  std::lock_guard lock(mutex_);
  return held_.contains(request);
}

}  // namespace dvp::bridge
