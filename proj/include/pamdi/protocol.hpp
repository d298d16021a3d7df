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
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pamdi/model.hpp"

namespace pamdi {

// Wire messages. Serials correlate replies with the request round so a
// late reply from an earlier round is never mistaken for a fresh one.
struct StatusRequest {
  int round_serial = 0;
};
struct StatusReply {
  int round_serial = 0;
  double seconds_per_flop = 0.0;
  double backlog_sec = 0.0;
};
struct Rtc {
  std::string task_id;  // "source/d/k", informational
  double flops = 0.0;
  int rtc_serial = 0;
};
struct Ctc {
  WorkerId granted_worker;
  int granted_serial = 0;
  double flops = 0.0;
};
struct FeatureTransfer {
  Task task;
};
struct OutputReturn {
  SourceId source_id;
  int data_index = 0;
};

struct Message {
  WorkerId sender;
  WorkerId recipient;
  SimTime sent_at = 0.0;
  std::uint64_t payload_bytes = 0;
  std::variant<StatusRequest, StatusReply, Rtc, Ctc, FeatureTransfer, OutputReturn> body;
};

const char* message_kind_name(const Message& msg);

/// Clear-to-compute coordination state at one worker. At most one grant may
/// be outstanding at any time.
struct PendingRtc {
  WorkerId sender;
  double flops = 0.0;
  SimTime received_at = 0.0;
  int rtc_serial = 0;
};

struct RtcState {
  std::vector<PendingRtc> pending;  // FIFO by received_at, ties by sender id
  std::optional<WorkerId> granted_to;
  int granted_serial = 0;
  SimTime grant_expires_at = 0.0;
  bool transfer_started = false;  // grantee's feature transfer is on the wire

  void reset();
  // Drops pending requests whose senders must have timed out by `now`.
  void drop_stale(SimTime now, double rtc_timeout_sec);
  // The request that would be granted next, if any (does not mutate).
  const PendingRtc* head() const;
};

std::string task_wire_id(const Task& task);

}  // namespace pamdi
