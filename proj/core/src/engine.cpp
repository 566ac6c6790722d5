#include "contsim/engine.hpp"

#include <algorithm>

#include "contsim/error.hpp"

namespace contsim {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::MessageDelivery: return "message_delivery";
    case EventKind::TimerFire: return "timer_fire";
    case EventKind::WorkloadStart: return "workload_start";
  }
  return "message_delivery";
}

std::string_view to_string(TimerPurpose purpose) {
  switch (purpose) {
    case TimerPurpose::Registration: return "registration";
    case TimerPurpose::Session: return "session";
    case TimerPurpose::Other: return "other";
  }
  return "other";
}

uint64_t Engine::schedule(double at, EventKind kind, std::function<void()> fn,
                          TraceEvent trace) {
  if (at < clock_) {
    throw SimError(Errc::InvalidValue, "cannot schedule event in the past");
  }
  uint64_t seq = next_seq_++;
  trace.time_ms = at;
  trace.seq = seq;
  if (trace.kind.empty()) trace.kind = to_string(kind);
  bool traced = kind != EventKind::MessageDelivery || !trace.src.empty();
  heap_.push_back(Queued{at, seq, std::move(fn), std::move(trace), traced});
  std::push_heap(heap_.begin(), heap_.end(), Later{});
  return seq;
}

TimerId Engine::set_timer(const std::string& pod, double delay_ms, TimerPurpose purpose,
                          std::function<void()> on_fire) {
  if (delay_ms <= 0) {
    throw SimError(Errc::InvalidValue, "timer delay must be positive");
  }
  uint64_t id = next_timer_++;
  live_timers_[id] = true;
  TraceEvent trace;
  trace.kind = to_string(EventKind::TimerFire);
  trace.src = pod;
  trace.tag = to_string(purpose);
  schedule(clock_ + delay_ms, EventKind::TimerFire,
           [this, id, fire = std::move(on_fire)]() {
             auto it = live_timers_.find(id);
             if (it == live_timers_.end()) return;
             bool armed = it->second;
             live_timers_.erase(it);
             if (armed) fire();
           },
           std::move(trace));
  return TimerId{id};
}

void Engine::cancel_timer(TimerId id) {
  auto it = live_timers_.find(id.value);
  if (it == live_timers_.end()) {
    if (trace_) {
      TraceEvent note;
      note.time_ms = clock_;
      note.seq = 0;
      note.kind = "note";
      note.tag = "cancel_unknown_timer";
      trace_->on_event(note);
    }
    return;
  }
  it->second = false;
}

void Engine::pop_and_dispatch() {
  std::pop_heap(heap_.begin(), heap_.end(), Later{});
  Queued ev = std::move(heap_.back());
  heap_.pop_back();
  clock_ = ev.time;
  ++processed_;
  if (trace_ && ev.traced) trace_->on_event(ev.trace);
  ev.fn();
}

double Engine::run() {
  while (!heap_.empty()) pop_and_dispatch();
  return clock_;
}

double Engine::run_until(double until) {
  while (!heap_.empty() && heap_.front().time <= until) pop_and_dispatch();
  clock_ = std::max(clock_, until);
  return clock_;
}

SendOutcome Network::send(const Message& msg, double at, DeliveryFn on_delivery) {
  const std::string* src_node = topo_->pod_node(msg.src_pod);
  const std::string* dst_node = topo_->pod_node(msg.dst_pod);
  if (!src_node || !dst_node) {
    throw SimError(Errc::NoRoute, "no route: pod '" +
                                      (src_node ? msg.dst_pod : msg.src_pod) +
                                      "' is not placed on any node");
  }
  double latency = topo_->effective_latency(*src_node, *dst_node);
  double occupancy = 0;
  if (msg.user_plane && *src_node != *dst_node && msg.size_bytes > 0) {
    double rate = topo_->egress_rate(*src_node, *dst_node);
    occupancy = static_cast<double>(msg.size_bytes) * 8.0 / rate * 1000.0;
  }
  auto key = std::make_pair(msg.src_pod, *dst_node);
  double free_at = 0;
  if (auto it = egress_free_ms_.find(key); it != egress_free_ms_.end()) free_at = it->second;
  double departure = std::max(at, free_at);
  if (occupancy > 0) egress_free_ms_[key] = departure + occupancy;
  double delivery = departure + latency + occupancy;

  TraceEvent trace;
  trace.kind = to_string(EventKind::MessageDelivery);
  trace.src = msg.src_pod;
  trace.dst = msg.dst_pod;
  trace.size = msg.size_bytes;
  trace.tag = msg.tag;
  engine_->schedule(delivery, EventKind::MessageDelivery,
                    [msg, delivery, cb = std::move(on_delivery)]() {
                      if (cb) cb(msg, delivery);
                    },
                    std::move(trace));
  return SendOutcome{departure, delivery};
}

}  // namespace contsim
