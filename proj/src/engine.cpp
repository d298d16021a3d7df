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
#include "pamdi/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <variant>

#include "pamdi/baselines.hpp"
#include "pamdi/cost.hpp"
#include "pamdi/protocol.hpp"
#include "pamdi/scheduler.hpp"

namespace pamdi {
namespace {

enum class TimerKind { StatusDeadline, CtcDeadline, GrantExpiry };

struct EvMessage {
  Message msg;
  WorkerId hop_from;
  WorkerId hop_to;
};
struct EvComputeDone {
  WorkerId worker;
};
struct EvChurn {
  WorkerId worker;
  bool leave = false;
  double interval = 0.0;
};
struct EvTimer {
  WorkerId worker;
  TimerKind kind = TimerKind::StatusDeadline;
  int serial = 0;
};

struct Event {
  SimTime time = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::StatusRefresh;
  std::variant<EvMessage, EvComputeDone, EvChurn, EvTimer> payload;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;  // insertion order breaks ties -> deterministic replay
  }
};

enum class Phase { Idle, CollectingStatus, AwaitingCtc };

struct WorkerRt {
  WorkerProfile prof;
  TaskQueue queue;        // PA-MDI / Local held tasks
  std::deque<Task> fifo;  // ring-mode arrival-order queue

  bool busy = false;
  Task current;
  SimTime busy_until = 0.0;

  // One decision round at a time (task processing thread).
  Phase phase = Phase::Idle;
  int round_serial = 0;
  std::map<WorkerId, StatusSnapshot> snapshots;
  std::set<WorkerId> awaiting_reply;
  bool holding = false;
  Task held;
  std::set<WorkerId> excluded;
  WorkerId target;
  int rtc_serial = 0;

  RtcState rtc;
  int grant_epoch = 0;
  int open_grant_record = -1;

  std::vector<Message> outbox;  // deferred task-bearing messages

  double rtc_timeout = 1.0;
  double status_timeout = 1.0;
};

struct SourceRt {
  SourceSpec spec;
  PartitionPlan plan;
  const ModelSpec* model = nullptr;
  int next_data = 1;
  int admitted = 0;
  int results = 0;
  std::set<int> result_seen;
};

struct RingRt {
  SourceId source;
  std::vector<WorkerId> full_chain;
  std::vector<WorkerId> chain;  // present members, original order
  std::vector<Cut> alloc;      // one cut per chain position
  bool adaptive = false;       // AR-MDI adapts to worker speed
  int completed = 0;
};

class Engine {
 public:
  explicit Engine(const ResolvedScenario& sc)
      : sc_(sc), algo_(sc.config.algorithm), topo_(sc.topology) {
    shared_medium_ = sc.config.contention == ContentionModel::SharedMedium;
    for (const auto& id : topo_.worker_ids()) {
      WorkerRt w;
      w.prof = topo_.profile(id);
      init_timeouts(w);
      workers_.emplace(id, std::move(w));
    }
    for (const auto& [sid, rs] : sc.sources) {
      SourceRt s;
      s.spec = rs.spec;
      s.plan = rs.plan;
      s.model = rs.model;
      sources_.emplace(sid, std::move(s));
      expected_results_ += rs.spec.num_data_points;
    }
    if (is_ring()) {
      for (const auto& [sid, chain] : sc.config.ring_chains) {
        RingRt r;
        r.source = sid;
        r.full_chain = chain;
        r.adaptive = algo_ == Algorithm::ArMdi;
        rings_.emplace(sid, std::move(r));
      }
      for (auto& [sid, ring] : rings_) ring_refresh(ring, /*trace_line=*/false);
    }
  }

  SimulationTrace run();

 private:
  bool is_ring() const { return algo_ == Algorithm::ArMdi || algo_ == Algorithm::MsMdi; }

  void init_timeouts(WorkerRt& w) {
    // Default: three times the one-hop RTT of the slowest incident link.
    double worst_rtt = 0.0;
    for (const auto& l : topo_.links()) {
      if (l.a != w.prof.worker_id && l.b != w.prof.worker_id) continue;
      const double rtt = 2.0 * transfer_delay(sc_.config.control_payload_bytes, l);
      worst_rtt = std::max(worst_rtt, rtt);
    }
    const double auto_timeout = worst_rtt > 0 ? 3.0 * worst_rtt : 1.0;
    w.rtc_timeout = sc_.config.rtc_timeout_sec > 0 ? sc_.config.rtc_timeout_sec : auto_timeout;
    w.status_timeout =
        sc_.config.status_timeout_sec > 0 ? sc_.config.status_timeout_sec : auto_timeout;
  }

  double gamma_of(const SourceId& sid) const { return sources_.at(sid).spec.priority_weight; }

  // ---- trace helpers ----

  void line(const std::string& kind, const std::string& rest) {
    std::string s = format_time(now_);
    s += ' ';
    s += kind;
    if (!rest.empty()) {
      s += ' ';
      s += rest;
    }
    trace_.lines.push_back(std::move(s));
  }

  void count(const std::string& key) { ++trace_.counters[key]; }

  static std::string task_tag(const Task& t) {
    return t.source_id + " " + std::to_string(t.data_index) + " " +
           std::to_string(t.partition_index);
  }

  // ---- event queue ----

  void push(SimTime t, EventKind kind, std::variant<EvMessage, EvComputeDone, EvChurn, EvTimer> p) {
    events_.push(Event{t, seq_++, kind, std::move(p)});
  }

  void timer(WorkerRt& w, TimerKind kind, int serial, SimTime at) {
    push(at, EventKind::StatusRefresh, EvTimer{w.prof.worker_id, kind, serial});
  }

  // ---- transmission ----

  SimTime& medium_for(const WorkerId& a, const WorkerId& b) {
    if (shared_medium_) return medium_busy_;
    auto key = std::minmax(a, b);
    return link_busy_[{key.first, key.second}];
  }

  // One physical hop. The sender must be present; the recipient may have
  // left (checked at delivery).
  void transmit(const Message& msg, const WorkerId& hop_from, const WorkerId& hop_to) {
    const LinkSpec* l = topo_.link_between(hop_from, hop_to);
    if (!l) {
      line("msg_drop", std::string(message_kind_name(msg)) + " " + hop_from + " " + hop_to +
                           " no_link");
      count("msg_drop");
      return;
    }
    SimTime& busy = medium_for(hop_from, hop_to);
    const SimTime start = std::max(now_, busy);
    const SimTime serialization =
        static_cast<double>(msg.payload_bytes) / l->bandwidth_bytes_per_sec;
    busy = start + serialization;
    const SimTime arrive = start + serialization + l->propagation_delay_sec;
    line("msg_send", std::string(message_kind_name(msg)) + " " + hop_from + " " + hop_to + " " +
                         std::to_string(msg.payload_bytes));
    count(std::string("msg_send.") + message_kind_name(msg));
    if (std::holds_alternative<FeatureTransfer>(msg.body) && algo_ == Algorithm::PaMdi) {
      WorkerRt& r = workers_.at(hop_to);
      if (r.rtc.granted_to == msg.sender) r.rtc.transfer_started = true;
    }
    push(arrive, EventKind::MessageDelivery, EvMessage{msg, hop_from, hop_to});
  }

  // Multi-hop, task-bearing: route toward msg.recipient, deferring when the
  // sender is absent or no route exists.
  void route_or_defer(const Message& msg, const WorkerId& from) {
    if (!topo_.present(from)) {
      workers_.at(from).outbox.push_back(msg);
      line("deferred", std::string(message_kind_name(msg)) + " " + from + " absent_sender");
      count("deferred");
      return;
    }
    auto path = topo_.shortest_path(from, msg.recipient, msg.payload_bytes);
    if (!path || path->size() < 2) {
      if (from == msg.recipient) return;  // nothing to do
      workers_.at(from).outbox.push_back(msg);
      line("deferred", std::string(message_kind_name(msg)) + " " + from + " no_route");
      count("deferred");
      return;
    }
    transmit(msg, from, (*path)[1]);
  }

  void flush_outbox(WorkerRt& w) {
    if (!topo_.present(w.prof.worker_id)) return;
    std::vector<Message> pending = std::move(w.outbox);
    w.outbox.clear();
    for (auto& msg : pending) route_or_defer(msg, w.prof.worker_id);
  }

  void retry_all_deferred() {
    for (auto& [id, w] : workers_) {
      if (!w.outbox.empty()) flush_outbox(w);
    }
  }

  Message make_control(const WorkerId& from, const WorkerId& to,
                       std::variant<StatusRequest, StatusReply, Rtc, Ctc, FeatureTransfer,
                                    OutputReturn> body) {
    Message m;
    m.sender = from;
    m.recipient = to;
    m.sent_at = now_;
    m.payload_bytes = sc_.config.control_payload_bytes;
    m.body = std::move(body);
    return m;
  }

  // ---- admission & results ----

  void admit(SourceRt& s) {
    const int d = s.next_data++;
    ++s.admitted;
    line("admit", s.spec.source_id + " " + std::to_string(d));
    if (is_ring()) {
      ring_spawn(rings_.at(s.spec.source_id), d, 1, s.spec.host_worker);
    } else {
      Task t = make_task(s.spec, s.plan, *s.model, 1, d, now_);
      insert_task(workers_.at(s.spec.host_worker), t);
    }
  }

  void maybe_admit(SourceRt& s, int completed_d) {
    if (completed_d + 1 != s.next_data) return;  // idempotent: only the frontier admits
    if (s.next_data > s.spec.num_data_points) return;
    admit(s);
  }

  void record_result(SourceRt& s, int d) {
    if (!s.result_seen.insert(d).second) {
      count("duplicate_result");
      line("duplicate_result", s.spec.source_id + " " + std::to_string(d));
      return;
    }
    ++s.results;
    ++total_results_;
    trace_.results.push_back({s.spec.source_id, d, now_});
    line("result", s.spec.source_id + " " + std::to_string(d));
    if (is_ring()) {
      RingRt& ring = rings_.at(s.spec.source_id);
      ++ring.completed;
      if (ring.adaptive && sc_.config.ring_realloc_every > 0 &&
          ring.completed % sc_.config.ring_realloc_every == 0) {
        ring_refresh(ring, true);
      }
    }
    maybe_admit(s, d);
  }

  // ---- task insertion & compute ----

  void insert_task(WorkerRt& w, const Task& t) {
    line("task_created", task_tag(t) + " " + w.prof.worker_id);
    if (is_ring()) {
      w.fifo.push_back(t);
    } else {
      w.queue.insert(t, gamma_of(t.source_id));
    }
    kick(w);
  }

  void start_compute(WorkerRt& w, const Task& t) {
    w.busy = true;
    w.current = t;
    w.busy_until = now_ + t.flops * w.prof.seconds_per_flop;
    line("compute_start", task_tag(t) + " " + w.prof.worker_id);
    push(w.busy_until, EventKind::ComputeComplete, EvComputeDone{w.prof.worker_id});
  }

  double backlog_of(const WorkerRt& w, bool include_held) const {
    double total = w.busy ? w.busy_until - now_ : 0.0;
    if (is_ring()) {
      for (const Task& t : w.fifo) total += t.flops * w.prof.seconds_per_flop;
    } else {
      total += w.queue.queued_compute_seconds(w.prof);
    }
    if (include_held && w.holding) total += w.held.flops * w.prof.seconds_per_flop;
    return total;
  }

  // ---- scheduling loop ----

  void kick(WorkerRt& w) {
    if (w.busy) return;
    const WorkerId& id = w.prof.worker_id;
    if (!topo_.present(id)) {
      // Departed: drain the held backlog locally, no communication.
      if (auto t = w.queue.fetch_next()) start_compute(w, *t);
      return;
    }
    switch (algo_) {
      case Algorithm::Local:
        if (auto t = w.queue.fetch_next()) start_compute(w, *t);
        break;
      case Algorithm::ArMdi:
      case Algorithm::MsMdi:
        if (!w.fifo.empty()) {
          Task t = w.fifo.front();
          w.fifo.pop_front();
          start_compute(w, t);
        }
        break;
      case Algorithm::PaMdi:
        begin_round(w);
        break;
    }
  }

  void begin_round(WorkerRt& w) {
    if (w.phase != Phase::Idle || w.busy || w.queue.empty()) return;
    ++w.round_serial;
    w.snapshots.clear();
    w.awaiting_reply.clear();
    w.excluded.clear();
    const auto nbrs = topo_.neighbors(w.prof.worker_id);
    if (nbrs.empty()) {
      resolve_round(w);
      return;
    }
    w.phase = Phase::CollectingStatus;
    for (const auto& n : nbrs) {
      transmit(make_control(w.prof.worker_id, n, StatusRequest{w.round_serial}), w.prof.worker_id,
               n);
      w.awaiting_reply.insert(n);
    }
    timer(w, TimerKind::StatusDeadline, w.round_serial, now_ + w.status_timeout);
  }

  void resolve_round(WorkerRt& w) {
    auto t = w.queue.fetch_next();
    if (!t) {
      w.phase = Phase::Idle;
      return;
    }
    w.holding = true;
    w.held = *t;
    decide(w);
  }

  void decide(WorkerRt& w) {
    const SourceRt& src = sources_.at(w.held.source_id);
    std::vector<CandidateStatus> cands;
    cands.push_back(
        {w.prof.worker_id, 0.0, w.prof.seconds_per_flop, backlog_of(w, /*include_held=*/false)});
    for (const auto& [id, snap] : w.snapshots) {
      if (w.excluded.count(id) || !topo_.present(id)) continue;
      const LinkSpec* l = topo_.link_between(w.prof.worker_id, id);
      if (!l) continue;
      cands.push_back(
          {id, transfer_delay(w.held.input_bytes, *l), snap.seconds_per_flop, snap.backlog_sec});
    }
    const OffloadDecision dec = decide_offload(w.held, w.prof.worker_id, cands,
                                               src.spec.priority_weight, src.spec.accuracy_gain,
                                               now_);
    line("decision", w.prof.worker_id + " " + task_tag(w.held) + " " + dec.chosen_worker + " " +
                         format_time(dec.score) + " " + std::to_string(cands.size()));
    if (dec.chosen_worker == w.prof.worker_id) {
      Task t = w.held;
      w.holding = false;
      w.phase = Phase::Idle;
      start_compute(w, t);
      return;
    }
    w.target = dec.chosen_worker;
    ++w.rtc_serial;
    w.phase = Phase::AwaitingCtc;
    transmit(make_control(w.prof.worker_id, w.target,
                          Rtc{task_wire_id(w.held), w.held.flops, w.rtc_serial}),
             w.prof.worker_id, w.target);
    timer(w, TimerKind::CtcDeadline, w.rtc_serial, now_ + w.rtc_timeout);
  }

  void try_grant(WorkerRt& w) {
    if (!topo_.present(w.prof.worker_id)) return;
    w.rtc.drop_stale(now_, w.rtc_timeout);
    if (w.busy || w.rtc.granted_to || w.rtc.pending.empty()) return;
    const PendingRtc head = *w.rtc.head();
    w.rtc.pending.clear();  // the broadcast tells everyone else they lost
    w.rtc.granted_to = head.sender;
    w.rtc.granted_serial = head.rtc_serial;
    w.rtc.grant_expires_at = now_ + w.rtc_timeout;
    w.rtc.transfer_started = false;
    ++w.grant_epoch;
    line("grant", w.prof.worker_id + " " + head.sender);
    w.open_grant_record = static_cast<int>(trace_.grants.size());
    trace_.grants.push_back({now_, -1.0, w.prof.worker_id, head.sender, ""});
    for (const auto& n : topo_.neighbors(w.prof.worker_id)) {
      transmit(make_control(w.prof.worker_id, n, Ctc{head.sender, head.rtc_serial, head.flops}),
               w.prof.worker_id, n);
    }
    timer(w, TimerKind::GrantExpiry, w.grant_epoch, w.rtc.grant_expires_at);
  }

  void close_grant(WorkerRt& w, const char* reason) {
    if (w.open_grant_record >= 0) {
      auto& rec = trace_.grants[static_cast<size_t>(w.open_grant_record)];
      rec.cleared_at = now_;
      rec.cleared_by = reason;
      w.open_grant_record = -1;
    }
    w.rtc.granted_to.reset();
    w.rtc.transfer_started = false;
    line("grant_clear", w.prof.worker_id + " " + reason);
  }

  // ---- message handling ----

  void on_message(const EvMessage& ev) {
    const Message& msg = ev.msg;
    if (!topo_.present(ev.hop_to)) {
      line("msg_drop",
           std::string(message_kind_name(msg)) + " " + ev.hop_from + " " + ev.hop_to + " absent");
      count("msg_drop");
      on_delivery_failed(msg, ev.hop_from);
      return;
    }
    if (ev.hop_to != msg.recipient) {
      // Intermediate hop of a routed message: forward from here.
      count(std::string("msg_fwd.") + message_kind_name(msg));
      route_or_defer(msg, ev.hop_to);
      return;
    }
    line("msg_recv", std::string(message_kind_name(msg)) + " " + msg.sender + " " + msg.recipient +
                         " " + std::to_string(msg.payload_bytes));
    count(std::string("msg_recv.") + message_kind_name(msg));
    WorkerRt& w = workers_.at(msg.recipient);
    std::visit([&](const auto& body) { handle(w, msg, body); }, msg.body);
  }

  void on_delivery_failed(const Message& msg, const WorkerId& hop_from) {
    if (std::holds_alternative<FeatureTransfer>(msg.body)) {
      const Task& t = std::get<FeatureTransfer>(msg.body).task;
      line("transfer_failed", msg.sender + " " + msg.recipient + " " + task_tag(t));
      count("transfer_failed");
      if (is_ring()) {
        // Idealized baseline recovery: re-dispatch instantly to the new owner.
        ring_redispatch(t);
      } else {
        WorkerRt& s = workers_.at(msg.sender);
        insert_task(s, t);
      }
      return;
    }
    if (std::holds_alternative<OutputReturn>(msg.body)) {
      // Keep the result alive: the last holder retries when topology changes.
      workers_.at(hop_from).outbox.push_back(msg);
      line("deferred", std::string(message_kind_name(msg)) + " " + hop_from + " delivery_failed");
      count("deferred");
    }
    // Control messages are simply lost; timeouts recover.
  }

  void handle(WorkerRt& w, const Message& msg, const StatusRequest& body) {
    transmit(make_control(w.prof.worker_id, msg.sender,
                          StatusReply{body.round_serial, w.prof.seconds_per_flop,
                                      backlog_of(w, /*include_held=*/true)}),
             w.prof.worker_id, msg.sender);
  }

  void handle(WorkerRt& w, const Message& msg, const StatusReply& body) {
    if (w.phase != Phase::CollectingStatus || body.round_serial != w.round_serial) return;
    w.snapshots[msg.sender] =
        StatusSnapshot{msg.sender, body.seconds_per_flop, body.backlog_sec, now_};
    w.awaiting_reply.erase(msg.sender);
    if (w.awaiting_reply.empty()) resolve_round(w);
  }

  void handle(WorkerRt& w, const Message& msg, const Rtc& body) {
    w.rtc.pending.push_back({msg.sender, body.flops, now_, body.rtc_serial});
    try_grant(w);
  }

  void handle(WorkerRt& w, const Message& msg, const Ctc& body) {
    if (w.phase != Phase::AwaitingCtc || msg.sender != w.target) return;  // overheard
    if (body.granted_worker == w.prof.worker_id) {
      if (body.granted_serial != w.rtc_serial) return;  // stale grant for an abandoned request
      Task t = w.held;
      w.holding = false;
      w.phase = Phase::Idle;
      Message transfer = make_control(w.prof.worker_id, w.target, FeatureTransfer{t});
      transfer.payload_bytes = t.input_bytes;
      transmit(transfer, w.prof.worker_id, w.target);
      kick(w);
    } else {
      line("ctc_denied", w.prof.worker_id + " " + w.target);
      count("ctc_denied");
      w.excluded.insert(w.target);
      decide(w);
    }
  }

  void handle(WorkerRt& w, const Message& msg, const FeatureTransfer& body) {
    if (algo_ == Algorithm::PaMdi) {
      if (w.rtc.granted_to == msg.sender) {
        close_grant(w, "transfer");
        try_grant(w);
      } else {
        count("transfer_without_grant");
      }
    }
    insert_task(w, body.task);
    SourceRt& src = sources_.at(body.task.source_id);
    if (msg.sender == src.spec.host_worker) {
      // The host's hand-off completed; its pipeline slot is free.
      maybe_admit(src, body.task.data_index);
    }
  }

  void handle(WorkerRt& w, const Message& msg, const OutputReturn& body) {
    (void)msg;
    SourceRt& src = sources_.at(body.source_id);
    if (w.prof.worker_id != src.spec.host_worker) return;  // routing already handled hops
    record_result(src, body.data_index);
  }

  // ---- compute completion ----

  void on_compute_done(WorkerRt& w) {
    Task t = w.current;
    w.busy = false;
    line("task_done", task_tag(t) + " " + w.prof.worker_id);
    trace_.tasks.push_back(
        {t.source_id, t.data_index, t.partition_index, t.created_at, now_, w.prof.worker_id});

    if (is_ring()) {
      ring_task_done(w, t);
    } else {
      SourceRt& src = sources_.at(t.source_id);
      if (t.partition_index < src.plan.partition_count()) {
        Task next =
            make_task(src.spec, src.plan, *src.model, t.partition_index + 1, t.data_index, now_);
        insert_task(w, next);
      } else if (w.prof.worker_id == src.spec.host_worker) {
        record_result(src, t.data_index);
      } else {
        Message out = make_control(w.prof.worker_id, src.spec.host_worker,
                                   OutputReturn{t.source_id, t.data_index});
        out.payload_bytes = src.model->output_size_bytes;
        route_or_defer(out, w.prof.worker_id);
      }
    }
    if (algo_ == Algorithm::PaMdi) try_grant(w);  // CPU just went idle
    kick(w);
  }

  // ---- timers ----

  void on_timer(const EvTimer& ev) {
    WorkerRt& w = workers_.at(ev.worker);
    switch (ev.kind) {
      case TimerKind::StatusDeadline:
        if (w.phase == Phase::CollectingStatus && ev.serial == w.round_serial) {
          line("status_deadline", w.prof.worker_id);
          resolve_round(w);
        }
        break;
      case TimerKind::CtcDeadline:
        if (w.phase == Phase::AwaitingCtc && ev.serial == w.rtc_serial) {
          line("rtc_timeout", w.prof.worker_id + " " + w.target);
          count("rtc_timeout");
          w.excluded.insert(w.target);
          decide(w);
        }
        break;
      case TimerKind::GrantExpiry:
        if (w.rtc.granted_to && ev.serial == w.grant_epoch && !w.rtc.transfer_started) {
          close_grant(w, "expired");
          count("grant_expired");
          try_grant(w);
        }
        break;
    }
  }

  // ---- churn ----

  void on_churn(const EvChurn& ev) {
    WorkerRt& w = workers_.at(ev.worker);
    ++trace_.churn_events_occurred;
    if (ev.leave) {
      line("churn_leave", ev.worker);
      topo_.set_present(ev.worker, false);
      if (algo_ == Algorithm::PaMdi) {
        if (w.holding) {
          w.queue.insert(w.held, gamma_of(w.held.source_id));
          w.holding = false;
        }
        w.phase = Phase::Idle;
        ++w.round_serial;
        ++w.rtc_serial;
        if (w.rtc.granted_to) close_grant(w, "leave");
        w.rtc.reset();
        kick(w);  // start draining the backlog locally
      } else if (is_ring()) {
        std::deque<Task> orphans = std::move(w.fifo);
        w.fifo.clear();
        for (auto& [sid, ring] : rings_) {
          if (std::find(ring.full_chain.begin(), ring.full_chain.end(), ev.worker) !=
              ring.full_chain.end()) {
            ring_refresh(ring, true);
          }
        }
        for (const Task& t : orphans) ring_redispatch(t);
      }
    } else {
      line("churn_return", ev.worker);
      topo_.set_present(ev.worker, true);
      if (algo_ == Algorithm::PaMdi) {
        w.rtc.reset();
        flush_outbox(w);
        kick(w);
      } else if (is_ring()) {
        for (auto& [sid, ring] : rings_) {
          if (std::find(ring.full_chain.begin(), ring.full_chain.end(), ev.worker) !=
              ring.full_chain.end()) {
            ring_refresh(ring, true);
          }
        }
        flush_outbox(w);
      } else {
        flush_outbox(w);
      }
      retry_all_deferred();  // returning node may have reconnected others' routes
    }
  }

  // ---- ring baselines ----

  void ring_refresh(RingRt& ring, bool trace_line) {
    std::map<WorkerId, bool> present;
    for (const auto& id : topo_.worker_ids()) present[id] = topo_.present(id);
    ring.chain = active_chain(ring.full_chain, present);
    const ModelSpec& model = *sources_.at(ring.source).model;
    if (ring.adaptive) {
      std::vector<double> spf;
      spf.reserve(ring.chain.size());
      for (const auto& id : ring.chain) spf.push_back(topo_.profile(id).seconds_per_flop);
      ring.alloc = allocate_layers_by_speed(model, spf);
    } else {
      ring.alloc = allocate_layers_uniform(model.layer_count(), static_cast<int>(ring.chain.size()));
    }
    if (trace_line) {
      std::string chain_str;
      for (const auto& id : ring.chain) {
        if (!chain_str.empty()) chain_str += ",";
        chain_str += id;
      }
      line("ring_realloc", ring.source + " " + chain_str);
    }
  }

  // Task covering the segment starting at from_layer under the ring's current
  // allocation; placed at the owning worker (locally or via transfer).
  void ring_spawn(RingRt& ring, int d, int from_layer, const WorkerId& producer) {
    const SourceRt& src = sources_.at(ring.source);
    const ModelSpec& model = *src.model;
    const int pos = position_owning_layer(ring.alloc, from_layer);
    const WorkerId owner = ring.chain[static_cast<size_t>(pos)];
    const int end = ring.alloc[static_cast<size_t>(pos)].end_layer;

    Task t;
    t.source_id = ring.source;
    t.data_index = d;
    t.partition_index = ++ring_task_counter_[{ring.source, d}];
    t.created_at = now_;
    double flops = 0.0;
    for (int l = from_layer; l <= end; ++l)
      flops += model.layers[static_cast<size_t>(l - 1)].flops;
    t.flops = flops;
    t.input_bytes = from_layer == 1 ? model.input_size_bytes
                                    : model.layers[static_cast<size_t>(from_layer - 2)].output_bytes;
    t.output_bytes = end == model.layer_count()
                         ? model.output_size_bytes
                         : model.layers[static_cast<size_t>(end - 1)].output_bytes;
    ring_segments_[{ring.source, d, t.partition_index}] = Cut{from_layer, end};

    if (owner == producer) {
      insert_task(workers_.at(owner), t);
      return;
    }
    if (!topo_.present(producer)) {
      // Idealized bypass: a departed node's hand-off appears at the new owner
      // with zero delay.
      line("redispatch", task_tag(t) + " " + owner);
      insert_task(workers_.at(owner), t);
      return;
    }
    Message m = make_control(producer, owner, FeatureTransfer{t});
    m.payload_bytes = t.input_bytes;
    route_or_defer(m, producer);
  }

  void ring_redispatch(const Task& t) {
    RingRt& ring = rings_.at(t.source_id);
    const Cut seg = ring_segments_.at({t.source_id, t.data_index, t.partition_index});
    const int pos = position_owning_layer(ring.alloc, seg.begin_layer);
    const WorkerId owner = ring.chain[static_cast<size_t>(pos)];
    line("redispatch", task_tag(t) + " " + owner);
    count("redispatch");
    insert_task(workers_.at(owner), t);
  }

  void ring_task_done(WorkerRt& w, const Task& t) {
    RingRt& ring = rings_.at(t.source_id);
    SourceRt& src = sources_.at(t.source_id);
    const Cut seg = ring_segments_.at({t.source_id, t.data_index, t.partition_index});
    if (seg.end_layer == src.model->layer_count()) {
      if (w.prof.worker_id == src.spec.host_worker) {
        record_result(src, t.data_index);
      } else if (!topo_.present(w.prof.worker_id)) {
        // Idealized recovery: the result reaches the source immediately.
        line("redispatch", task_tag(t) + " " + src.spec.host_worker);
        record_result(src, t.data_index);
      } else {
        Message out = make_control(w.prof.worker_id, src.spec.host_worker,
                                   OutputReturn{t.source_id, t.data_index});
        out.payload_bytes = src.model->output_size_bytes;
        route_or_defer(out, w.prof.worker_id);
      }
      return;
    }
    ring_spawn(ring, t.data_index, seg.end_layer + 1, w.prof.worker_id);
  }

  // ---- members ----

  const ResolvedScenario& sc_;
  Algorithm algo_;
  Topology topo_;
  bool shared_medium_ = false;

  std::map<WorkerId, WorkerRt> workers_;
  std::map<SourceId, SourceRt> sources_;
  std::map<SourceId, RingRt> rings_;
  std::map<std::tuple<SourceId, int, int>, Cut> ring_segments_;
  std::map<std::pair<SourceId, int>, int> ring_task_counter_;

  std::priority_queue<Event, std::vector<Event>, EventLater> events_;
  std::uint64_t seq_ = 0;
  SimTime now_ = 0.0;
  std::map<std::pair<WorkerId, WorkerId>, SimTime> link_busy_;
  SimTime medium_busy_ = 0.0;

  SimulationTrace trace_;
  int expected_results_ = 0;
  int total_results_ = 0;
};

SimulationTrace Engine::run() {
  // Churn schedule first so admission events at t=0 are ordered after nothing.
  if (sc_.config.churn) {
    ChurnProcess process = *sc_.config.churn;
    if (process.rng_seed == 0) {
      process.rng_seed = sc_.config.seed * 0x9E3779B97F4A7C15ull + 0x517CC1B727220A95ull;
    }
    const auto schedule = make_churn_schedule(process, sc_.config.max_sim_time);
    for (const auto& ev : schedule) {
      trace_.churn_intervals.push_back(ev.interval);
      push(ev.time, ev.leave ? EventKind::ChurnLeave : EventKind::ChurnReturn,
           EvChurn{ev.worker, ev.leave, ev.interval});
    }
  }
  line("begin", sc_.config.name + " " + algorithm_name(algo_) + " seed " +
                    std::to_string(sc_.config.seed));
  for (auto& [sid, s] : sources_) admit(s);

  while (total_results_ < expected_results_) {
    if (events_.empty()) {
      trace_.deadlocked = true;
      line("deadlock", std::to_string(total_results_) + "/" + std::to_string(expected_results_));
      break;
    }
    Event ev = events_.top();
    if (ev.time > sc_.config.max_sim_time) {
      trace_.truncated = true;
      line("truncated", std::to_string(total_results_) + "/" + std::to_string(expected_results_));
      break;
    }
    events_.pop();
    now_ = ev.time;
    switch (ev.kind) {
      case EventKind::MessageDelivery:
        on_message(std::get<EvMessage>(ev.payload));
        break;
      case EventKind::ComputeComplete:
        on_compute_done(workers_.at(std::get<EvComputeDone>(ev.payload).worker));
        break;
      case EventKind::ChurnLeave:
      case EventKind::ChurnReturn:
        on_churn(std::get<EvChurn>(ev.payload));
        break;
      case EventKind::StatusRefresh:
        on_timer(std::get<EvTimer>(ev.payload));
        break;
    }
  }
  trace_.end_time = now_;
  line("end", "results " + std::to_string(total_results_) + " truncated " +
                  std::to_string(trace_.truncated ? 1 : 0) + " deadlocked " +
                  std::to_string(trace_.deadlocked ? 1 : 0));

  for (const auto& [sid, s] : sources_) {
    SourceSummary summary;
    summary.source_id = sid;
    summary.host = s.spec.host_worker;
    summary.num_data_points = s.spec.num_data_points;
    summary.partitions = is_ring() ? 0 : s.plan.partition_count();
    summary.admitted = s.admitted;
    summary.results = s.results;
    trace_.sources[sid] = summary;
  }
  return std::move(trace_);
}

}  // namespace

SimulationTrace run_simulation(const ResolvedScenario& scenario) {
  Engine engine(scenario);
  return engine.run();
}

}  // namespace pamdi
