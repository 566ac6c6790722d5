#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "contsim/topology.hpp"

namespace contsim {

enum class EventKind { MessageDelivery, TimerFire, WorkloadStart };
enum class TimerPurpose { Registration, Session, Other };

std::string_view to_string(EventKind kind);
std::string_view to_string(TimerPurpose purpose);

/// One simulated message between pods. Control-plane messages are
/// latency-bound: their bytes are recorded but not charged against link
/// bandwidth. User-plane messages serialize at the egress rate.
struct Message {
  std::string src_pod;
  std::string dst_pod;
  int64_t size_bytes = 0;
  std::string tag;
  bool user_plane = false;
};

struct TraceEvent {
  double time_ms = 0;
  uint64_t seq = 0;
  std::string kind;
  std::string src;
  std::string dst;
  int64_t size = 0;
  std::string tag;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_event(const TraceEvent& ev) = 0;
};

/// Collects trace events in memory (tests, invariant checks).
class VectorTrace : public TraceSink {
 public:
  void on_event(const TraceEvent& ev) override { events_.push_back(ev); }
  const std::vector<TraceEvent>& events() const { return events_; }

 private:
  std::vector<TraceEvent> events_;
};

struct TimerId {
  uint64_t value = 0;
  friend bool operator==(const TimerId&, const TimerId&) = default;
};

/// Deterministic event core: virtual clock plus a (time, seq) ordered queue.
/// Ties resolve by insertion sequence, so identical schedules replay
/// identically. The engine itself draws no randomness.
class Engine {
 public:
  double now() const { return clock_; }

  /// Schedules a callback; `at` must not precede the clock. Returns the seq
  /// assigned to the event.
  uint64_t schedule(double at, EventKind kind, std::function<void()> fn,
                    TraceEvent trace = {});

  /// Arms a timer owned by `pod` that fires after `delay_ms` (> 0).
  TimerId set_timer(const std::string& pod, double delay_ms, TimerPurpose purpose,
                    std::function<void()> on_fire);

  /// Cancelling an unknown or already-fired timer is a no-op (noted in the
  /// trace when one is attached).
  void cancel_timer(TimerId id);

  /// Processes every queued event; returns the final clock (0 if none ran).
  double run();

  /// Processes events up to and including `until`, then parks the clock
  /// there; later events stay queued.
  double run_until(double until);

  bool empty() const { return heap_.empty(); }
  uint64_t events_processed() const { return processed_; }

  void set_trace(TraceSink* sink) { trace_ = sink; }
  TraceSink* trace() const { return trace_; }

 private:
  struct Queued {
    double time;
    uint64_t seq;
    std::function<void()> fn;
    TraceEvent trace;
    bool traced;
  };
  struct Later {
    bool operator()(const Queued& a, const Queued& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  void pop_and_dispatch();

  std::vector<Queued> heap_;
  double clock_ = 0;
  uint64_t next_seq_ = 0;
  uint64_t next_timer_ = 1;
  uint64_t processed_ = 0;
  std::map<uint64_t, bool> live_timers_;  // id -> armed
  TraceSink* trace_ = nullptr;
};

struct SendOutcome {
  double departure_ms = 0;  // serialization start at the egress
  double delivery_ms = 0;
};

/// Message delivery over the topology with per-egress FIFO serialization:
/// a message cannot begin serializing before the previous message from the
/// same pod to the same node has finished.
class Network {
 public:
  Network(const Topology& topo, Engine& engine) : topo_(&topo), engine_(&engine) {}

  using DeliveryFn = std::function<void(const Message&, double delivery_ms)>;

  SendOutcome send(const Message& msg, double at, DeliveryFn on_delivery);

  const Topology& topology() const { return *topo_; }

 private:
  const Topology* topo_;
  Engine* engine_;
  std::map<std::pair<std::string, std::string>, double> egress_free_ms_;
};

}  // namespace contsim
