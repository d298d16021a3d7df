/*
 * Copyright 2026 pamdi-sim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "pamdi/protocol.hpp"

#include <algorithm>

namespace pamdi {

const char* message_kind_name(const Message& msg) {
  static const char* names[] = {"StatusRequest", "StatusReply",     "RTC",
                                "CTC",           "FeatureTransfer", "OutputReturn"};
  return names[msg.body.index()];
}

void RtcState::reset() {
  pending.clear();
  granted_to.reset();
  granted_serial = 0;
  grant_expires_at = 0.0;
  transfer_started = false;
}

void RtcState::drop_stale(SimTime now, double rtc_timeout_sec) {
  std::erase_if(pending, [&](const PendingRtc& p) {
    return now - p.received_at > rtc_timeout_sec;
  });
}

const PendingRtc* RtcState::head() const {
  const PendingRtc* best = nullptr;
  for (const PendingRtc& p : pending) {
    if (!best || p.received_at < best->received_at ||
        (p.received_at == best->received_at && p.sender < best->sender)) {
      best = &p;
    }
  }
  return best;
}

std::string task_wire_id(const Task& task) {
  return task.source_id + "/" + std::to_string(task.data_index) + "/" +
         std::to_string(task.partition_index);
}

}  // namespace pamdi
