#include "contsim/core5g.hpp"

#include <algorithm>
#include <cstdio>

#include "contsim/error.hpp"

namespace contsim {

std::string_view to_string(Procedure p) {
  switch (p) {
    case Procedure::Registration: return "registration";
    case Procedure::PduEstablishment: return "pdu_session";
    case Procedure::DataTransfer: return "data_transfer";
  }
  return "registration";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::Timeout: return "timeout";
    case Outcome::Abandoned: return "abandoned";
  }
  return "success";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Up: return "up";
    case Direction::Down: return "down";
    case Direction::UpDown: return "updown";
  }
  return "up";
}

Direction direction_from_string(std::string_view name) {
  if (name == "up") return Direction::Up;
  if (name == "down") return Direction::Down;
  if (name == "updown") return Direction::UpDown;
  throw SimError(Errc::InvalidValue, "unknown direction '" + std::string(name) + "'");
}

std::string_view to_string(LegClass cls) {
  switch (cls) {
    case LegClass::Radio: return "radio";
    case LegClass::N2: return "n2";
    case LegClass::N3: return "n3";
    case LegClass::N4: return "n4";
    case LegClass::N6: return "n6";
    case LegClass::Local: return "local";
    case LegClass::AmfDc: return "amf_dc";
    case LegClass::SmfDc: return "smf_dc";
  }
  return "radio";
}

LegClass leg_class_from_string(std::string_view name) {
  if (name == "radio") return LegClass::Radio;
  if (name == "n2") return LegClass::N2;
  if (name == "n3") return LegClass::N3;
  if (name == "n4") return LegClass::N4;
  if (name == "n6") return LegClass::N6;
  if (name == "local") return LegClass::Local;
  if (name == "amf_dc") return LegClass::AmfDc;
  if (name == "smf_dc") return LegClass::SmfDc;
  throw SimError(Errc::InvalidValue, "unknown leg class '" + std::string(name) + "'");
}

FlowTable registration_flow(int64_t control_bytes) {
  using K = NFKind;
  using L = LegClass;
  FlowTable t{Procedure::Registration, {}};
  auto leg = [&t, control_bytes](K from, K to, L cls) {
    t.legs.push_back(FlowLeg{from, to, cls, control_bytes});
  };
  // Initial request.
  leg(K::UE, K::GNB, L::Radio);
  leg(K::GNB, K::AMF, L::N2);
  // Authentication: two round trips into the datacenter core bundle.
  leg(K::AMF, K::DCCORE, L::AmfDc);
  leg(K::DCCORE, K::AMF, L::AmfDc);
  leg(K::AMF, K::DCCORE, L::AmfDc);
  leg(K::DCCORE, K::AMF, L::AmfDc);
  // Challenge and response over the air interface.
  leg(K::AMF, K::GNB, L::N2);
  leg(K::GNB, K::UE, L::Radio);
  leg(K::UE, K::GNB, L::Radio);
  leg(K::GNB, K::AMF, L::N2);
  // Subscription lookup: two more round trips.
  leg(K::AMF, K::DCCORE, L::AmfDc);
  leg(K::DCCORE, K::AMF, L::AmfDc);
  leg(K::AMF, K::DCCORE, L::AmfDc);
  leg(K::DCCORE, K::AMF, L::AmfDc);
  // Accept and complete.
  leg(K::AMF, K::GNB, L::N2);
  leg(K::GNB, K::UE, L::Radio);
  leg(K::UE, K::GNB, L::Radio);
  leg(K::GNB, K::AMF, L::N2);
  return t;
}

FlowTable pdu_establishment_flow(int64_t control_bytes) {
  using K = NFKind;
  using L = LegClass;
  FlowTable t{Procedure::PduEstablishment, {}};
  auto leg = [&t, control_bytes](K from, K to, L cls) {
    t.legs.push_back(FlowLeg{from, to, cls, control_bytes});
  };
  // Session request.
  leg(K::UE, K::GNB, L::Radio);
  leg(K::GNB, K::AMF, L::N2);
  leg(K::AMF, K::SMF, L::Local);
  // Policy/subscription round trip to the datacenter core.
  leg(K::SMF, K::DCCORE, L::SmfDc);
  leg(K::DCCORE, K::SMF, L::SmfDc);
  // Session establishment round trip to the UPF.
  leg(K::SMF, K::UPF, L::N4);
  leg(K::UPF, K::SMF, L::N4);
  leg(K::SMF, K::AMF, L::Local);
  // Resource setup toward the RAN and the UE acknowledgement.
  leg(K::AMF, K::GNB, L::N2);
  leg(K::GNB, K::UE, L::Radio);
  leg(K::UE, K::GNB, L::Radio);
  leg(K::GNB, K::AMF, L::N2);
  leg(K::AMF, K::SMF, L::Local);
  // Session modification round trip.
  leg(K::SMF, K::UPF, L::N4);
  leg(K::UPF, K::SMF, L::N4);
  return t;
}

struct CoreSimulation::ProcState {
  std::string ue_id;
  Procedure procedure = Procedure::Registration;
  const FlowTable* flow = nullptr;
  double start_ms = 0;
  int attempt = 1;
  TimerId timer;
  DoneFn done;
  bool finished = false;
};

struct CoreSimulation::TransferState {
  std::string ue_id;
  TransferOptions opt;
  double start_ms = 0;
  DoneFn done;
  ChunkFn on_chunk;
  std::vector<std::string> path;
  int64_t phase_payload = 0;
  int64_t total_chunks = 0;
  int64_t delivered = 0;
  bool response_phase = false;
  double last_delivery = 0;
};

CoreSimulation::CoreSimulation(Topology& topo, CoreConfig cfg, FlowTable reg_flow,
                               FlowTable pdu_flow)
    : topo_(&topo),
      cfg_(std::move(cfg)),
      reg_flow_(std::move(reg_flow)),
      pdu_flow_(std::move(pdu_flow)),
      net_(topo, engine_) {}

void CoreSimulation::register_pods(const std::vector<PodSpec>& pods) {
  for (const auto& pod : pods) pod_kinds_[pod.name] = pod.nf_kind;
}

UEContext& CoreSimulation::add_ue(const std::string& ue_id, UEState initial) {
  UEContext ctx;
  ctx.ue_id = ue_id;
  ctx.state = initial;
  auto [it, inserted] = ues_.emplace(ue_id, std::move(ctx));
  if (!inserted) throw SimError(Errc::InvalidValue, "UE '" + ue_id + "' already exists");
  return it->second;
}

UEContext& CoreSimulation::ue(const std::string& ue_id) {
  auto it = ues_.find(ue_id);
  if (it == ues_.end()) throw SimError(Errc::UnknownPod, "unknown UE '" + ue_id + "'");
  return it->second;
}

std::string CoreSimulation::pod_for(NFKind kind, const std::string& ue_id) const {
  if (kind == NFKind::UE) return ue_id;
  return std::string(to_string(kind));
}

int64_t* CoreSimulation::message_counter(const std::string& ue_id, Procedure p) {
  UEContext& u = ue(ue_id);
  switch (p) {
    case Procedure::Registration: return &u.registration_messages;
    case Procedure::PduEstablishment: return &u.pdu_messages;
    case Procedure::DataTransfer: return &u.transfer_messages;
  }
  return &u.registration_messages;
}

double CoreSimulation::timer_for(Procedure p) const {
  return p == Procedure::Registration ? cfg_.registration_timer_ms : cfg_.session_timer_ms;
}

void CoreSimulation::after_processing(const std::string& pod, std::function<void()> cont) {
  double proc = 0;
  if (auto it = pod_kinds_.find(pod); it != pod_kinds_.end()) {
    proc = cfg_.nf_proc_ms(it->second);
  }
  if (proc <= 0) {
    cont();
    return;
  }
  // NFs handle one message at a time; arrivals queue behind the busy pod.
  double now = engine_.now();
  double start = std::max(now, pod_busy_ms_[pod]);
  double done_at = start + proc;
  pod_busy_ms_[pod] = done_at;
  engine_.set_timer(pod, done_at - now, TimerPurpose::Other, std::move(cont));
}

void CoreSimulation::start_procedure(const std::string& ue_id, Procedure p, DoneFn done) {
  UEContext& u = ue(ue_id);
  if (p == Procedure::Registration) {
    if (u.state != UEState::Deregistered) {
      throw SimError(Errc::InvalidValue, "UE '" + ue_id + "' is not deregistered");
    }
    u.state = UEState::Registering;
  } else {
    if (u.state != UEState::Registered) {
      throw SimError(Errc::InvalidValue, "UE '" + ue_id + "' has not registered");
    }
  }
  auto st = std::make_shared<ProcState>();
  st->ue_id = ue_id;
  st->procedure = p;
  st->flow = p == Procedure::Registration ? &reg_flow_ : &pdu_flow_;
  st->start_ms = engine_.now();
  st->done = std::move(done);
  start_attempt(st);
}

void CoreSimulation::start_registration(const std::string& ue_id, DoneFn done) {
  start_procedure(ue_id, Procedure::Registration, std::move(done));
}

void CoreSimulation::start_pdu_establishment(const std::string& ue_id, DoneFn done) {
  start_procedure(ue_id, Procedure::PduEstablishment, std::move(done));
}

void CoreSimulation::start_attempt(std::shared_ptr<ProcState> st) {
  ue(st->ue_id).attempts_used = st->attempt;
  TimerPurpose purpose = st->procedure == Procedure::Registration
                             ? TimerPurpose::Registration
                             : TimerPurpose::Session;
  st->timer = engine_.set_timer(
      st->ue_id, timer_for(st->procedure), purpose,
      [this, st, attempt = st->attempt]() { on_procedure_timer(st, attempt); });
  advance_leg(st, st->attempt, 0);
}

void CoreSimulation::advance_leg(std::shared_ptr<ProcState> st, int attempt, size_t idx) {
  if (idx == st->flow->legs.size()) {
    complete_attempt(st, attempt);
    return;
  }
  const FlowLeg& leg = st->flow->legs[idx];
  Message msg;
  msg.src_pod = pod_for(leg.from, st->ue_id);
  msg.dst_pod = pod_for(leg.to, st->ue_id);
  msg.size_bytes = leg.payload_bytes;
  msg.user_plane = false;
  char tag[64];
  std::snprintf(tag, sizeof(tag), "%s:%s:a%d:l%02zu",
                st->procedure == Procedure::Registration ? "reg" : "pdu",
                st->ue_id.c_str(), attempt, idx);
  msg.tag = tag;
  ++*message_counter(st->ue_id, st->procedure);
  std::optional<double> latency_override;
  if (leg.cls == LegClass::Local) latency_override = cfg_.base_ms;
  net_.send(msg, engine_.now(),
            [this, st, attempt, idx](const Message& m, double) {
              after_processing(m.dst_pod,
                               [this, st, attempt, idx]() { advance_leg(st, attempt, idx + 1); });
            },
            latency_override);
}

void CoreSimulation::complete_attempt(std::shared_ptr<ProcState> st, int attempt) {
  // Late completion of an attempt the UE already gave up on: the messages
  // were carried and processed, but the outcome is discarded.
  if (st->finished || attempt != st->attempt) return;
  engine_.cancel_timer(st->timer);
  finish(st, Outcome::Success);
}

void CoreSimulation::on_procedure_timer(std::shared_ptr<ProcState> st, int attempt) {
  if (st->finished || attempt != st->attempt) return;
  if (st->attempt < 1 + cfg_.max_retries) {
    ++st->attempt;
    start_attempt(st);
    return;
  }
  finish(st, Outcome::Timeout);
}

void CoreSimulation::finish(std::shared_ptr<ProcState> st, Outcome outcome) {
  st->finished = true;
  UEContext& u = ue(st->ue_id);
  if (st->procedure == Procedure::Registration) {
    u.state = outcome == Outcome::Success ? UEState::Registered : UEState::Failed;
  } else {
    u.state = outcome == Outcome::Success ? UEState::SessionActive : UEState::Failed;
  }
  ProcedureResult result;
  result.ue_id = st->ue_id;
  result.procedure = st->procedure;
  result.start_ms = st->start_ms;
  result.end_ms = engine_.now();
  result.outcome = outcome;
  result.attempts = st->attempt;
  results_.push_back(result);
  if (st->done) st->done(result);
}

std::vector<std::string> CoreSimulation::transfer_path(const std::string& ue_id,
                                                       bool uplink) const {
  std::vector<std::string> path{ue_id, pod_for(NFKind::GNB, ue_id),
                                pod_for(NFKind::UPF, ue_id), pod_for(NFKind::DN, ue_id)};
  if (!uplink) std::reverse(path.begin(), path.end());
  return path;
}

namespace {

int64_t chunk_count(int64_t payload, int64_t chunk_bytes) {
  if (payload <= 0) return 1;  // a zero-size probe still traverses the path
  return (payload + chunk_bytes - 1) / chunk_bytes;
}

int64_t chunk_size(int64_t payload, int64_t chunk_bytes, int64_t index, int64_t total) {
  if (payload <= 0) return 0;
  if (index < total - 1) return chunk_bytes;
  return payload - (total - 1) * chunk_bytes;
}

}  // namespace

void CoreSimulation::start_data_transfer(const std::string& ue_id, TransferOptions opt,
                                         DoneFn done, ChunkFn on_chunk) {
  UEContext& u = ue(ue_id);
  if (u.state != UEState::SessionActive) {
    throw SimError(Errc::InvalidValue, "UE '" + ue_id + "' has no active session");
  }
  auto st = std::make_shared<TransferState>();
  st->ue_id = ue_id;
  st->opt = opt;
  st->start_ms = engine_.now();
  st->done = std::move(done);
  st->on_chunk = std::move(on_chunk);
  st->path = transfer_path(ue_id, opt.direction != Direction::Down);
  st->phase_payload = opt.payload_bytes;
  st->total_chunks = chunk_count(opt.payload_bytes, cfg_.chunk_bytes);
  emit_chunks(st);
}

void CoreSimulation::emit_chunks(std::shared_ptr<TransferState> st) {
  if (st->opt.stream_rate_bps > 0 && !st->response_phase) {
    // Source-paced stream: one chunk per pacing interval.
    std::function<void(int64_t)> emit = [this, st, &emit](int64_t index) {
      int64_t size = chunk_size(st->phase_payload, cfg_.chunk_bytes, index, st->total_chunks);
      launch_chunk(st, index, size, engine_.now());
      if (index + 1 < st->total_chunks) {
        double interval_ms =
            static_cast<double>(size) * 8.0 / st->opt.stream_rate_bps * 1000.0;
        auto next = [this, st, index]() { emit_chunk_at(st, index + 1); };
        engine_.set_timer(st->path.front(), interval_ms, TimerPurpose::Other, next);
      }
    };
    emit(0);
    return;
  }
  // Burst: hand every chunk to the egress at once; FIFO serialization paces.
  double now = engine_.now();
  for (int64_t i = 0; i < st->total_chunks; ++i) {
    launch_chunk(st, i, chunk_size(st->phase_payload, cfg_.chunk_bytes, i, st->total_chunks),
                 now);
  }
}

void CoreSimulation::launch_chunk(std::shared_ptr<TransferState> st, int64_t index,
                                  int64_t size, double at) {
  forward_chunk(st, index, size, 0, at);
}

void CoreSimulation::forward_chunk(std::shared_ptr<TransferState> st, int64_t index,
                                   int64_t size, size_t hop, double at) {
  Message msg;
  msg.src_pod = st->path[hop];
  msg.dst_pod = st->path[hop + 1];
  msg.size_bytes = size;
  msg.user_plane = true;
  char tag[64];
  std::snprintf(tag, sizeof(tag), "%s:%s:c%05lld:h%zu",
                st->response_phase ? "resp" : "data", st->ue_id.c_str(),
                static_cast<long long>(index), hop);
  msg.tag = tag;
  ++*message_counter(st->ue_id, Procedure::DataTransfer);
  bool last_hop = hop + 2 == st->path.size();
  auto first_departure = std::make_shared<double>(0);
  SendOutcome out = net_.send(
      msg, at,
      [this, st, index, size, hop, last_hop, first_departure](const Message& m, double t) {
        if (last_hop) {
          chunk_delivered(st, index, *first_departure, t, size);
          return;
        }
        after_processing(m.dst_pod, [this, st, index, size, hop, t]() {
          forward_chunk(st, index, size, hop + 1, engine_.now());
        });
      });
  if (hop == 0) st->first_departures[index] = out.departure_ms;
  *first_departure = hop == 0 ? out.departure_ms : st->first_departures[index];
}

void CoreSimulation::chunk_delivered(std::shared_ptr<TransferState> st, int64_t index,
                                     double departure, double delivery, int64_t size) {
  st->last_delivery = std::max(st->last_delivery, delivery);
  ++st->delivered;
  if (st->on_chunk && !st->response_phase) {
    ChunkResult chunk;
    chunk.ue_id = st->ue_id;
    chunk.index = index;
    chunk.size_bytes = size;
    chunk.departure_ms = departure;
    chunk.delivery_ms = delivery;
    st->on_chunk(chunk);
  }
  if (st->delivered == st->total_chunks) phase_complete(st);
}

void CoreSimulation::phase_complete(std::shared_ptr<TransferState> st) {
  if (st->opt.direction == Direction::UpDown && !st->response_phase) {
    st->response_phase = true;
    st->path = transfer_path(st->ue_id, false);
    st->phase_payload = st->opt.response_bytes;
    st->total_chunks = chunk_count(st->opt.response_bytes, cfg_.chunk_bytes);
    st->delivered = 0;
    if (st->opt.server_proc_ms > 0) {
      engine_.set_timer(st->path.front(), st->opt.server_proc_ms, TimerPurpose::Other,
                        [this, st]() { emit_chunks(st); });
    } else {
      emit_chunks(st);
    }
    return;
  }
  finish_transfer(st);
}

void CoreSimulation::finish_transfer(std::shared_ptr<TransferState> st) {
  ProcedureResult result;
  result.ue_id = st->ue_id;
  result.procedure = Procedure::DataTransfer;
  result.start_ms = st->start_ms;
  result.end_ms = engine_.now();
  result.outcome = Outcome::Success;
  result.attempts = 1;
  results_.push_back(result);
  if (st->done) st->done(result);
}

ProcedureResult CoreSimulation::run_registration(const std::string& ue_id) {
  std::optional<ProcedureResult> out;
  start_registration(ue_id, [&out](const ProcedureResult& r) { out = r; });
  engine_.run();
  out->messages_sent = ue(ue_id).registration_messages;
  return *out;
}

ProcedureResult CoreSimulation::run_pdu_establishment(const std::string& ue_id) {
  std::optional<ProcedureResult> out;
  start_pdu_establishment(ue_id, [&out](const ProcedureResult& r) { out = r; });
  engine_.run();
  out->messages_sent = ue(ue_id).pdu_messages;
  return *out;
}

ProcedureResult CoreSimulation::run_data_transfer(const std::string& ue_id,
                                                  int64_t payload_bytes, Direction direction,
                                                  double server_proc_ms) {
  TransferOptions opt;
  opt.payload_bytes = payload_bytes;
  opt.direction = direction;
  opt.server_proc_ms = server_proc_ms;
  opt.response_bytes = direction == Direction::UpDown ? cfg_.chunk_bytes : 0;
  std::optional<ProcedureResult> out;
  start_data_transfer(ue_id, opt, [&out](const ProcedureResult& r) { out = r; });
  engine_.run();
  out->messages_sent = ue(ue_id).transfer_messages;
  return *out;
}

std::vector<ProcedureResult> CoreSimulation::take_results() {
  std::vector<ProcedureResult> out = std::move(results_);
  results_.clear();
  for (auto& r : out) {
    r.messages_sent = *message_counter(r.ue_id, r.procedure);
  }
  return out;
}

ArchitecturePreset baseline_preset() {
  ArchitecturePreset p;
  p.name = "baseline";
  p.n2_ms = 12.5;
  p.n3_ms = 12.5;
  p.n4_ms = 0;
  p.n6_ms = 0;
  p.dc_cloudlet_ms = 0;
  NfPlacementRule dc_rule;
  dc_rule.node_selector = {{"kind", "datacenter"}};
  p.nf_rules[NFKind::DCCORE] = dc_rule;
  p.nf_rules[NFKind::AMF] = dc_rule;
  p.nf_rules[NFKind::SMF] = dc_rule;
  p.nf_rules[NFKind::UPF] = dc_rule;
  return p;
}

ArchitecturePreset latopt_preset() {
  ArchitecturePreset p = baseline_preset();
  p.name = "latopt";
  p.n2_ms = 12.5;
  p.n3_ms = 1;
  p.n4_ms = 12.5;
  p.n6_ms = 0;
  p.dc_cloudlet_ms = 0;
  NfPlacementRule upf_rule;
  upf_rule.pin = "edge-0";
  upf_rule.tolerations = {{"kind", "edge"}};
  p.nf_rules[NFKind::UPF] = upf_rule;
  return p;
}

ArchitecturePreset accessopt_preset() {
  ArchitecturePreset p = latopt_preset();
  p.name = "accessopt";
  p.n2_ms = 3.5;
  p.n3_ms = 1;
  p.n4_ms = 3.5;
  p.n6_ms = 0;
  p.dc_cloudlet_ms = 9;
  NfPlacementRule cloudlet_rule;
  cloudlet_rule.node_selector = {{"kind", "cloudlet"}};
  p.nf_rules[NFKind::AMF] = cloudlet_rule;
  p.nf_rules[NFKind::SMF] = cloudlet_rule;
  return p;
}

ArchitecturePreset preset_by_name(std::string_view name) {
  if (name == "baseline") return baseline_preset();
  if (name == "latopt") return latopt_preset();
  if (name == "accessopt") return accessopt_preset();
  throw SimError(Errc::InvalidValue, "unknown architecture '" + std::string(name) + "'");
}

TopologySpec default_inventory(const CoreConfig& cfg) {
  TopologySpec spec;
  spec.loopback_ms = cfg.loopback_ms;
  auto add_node = [&spec](std::string name, NodeKind kind, std::vector<Taint> taints = {},
                          std::map<std::string, std::string> extra_labels = {}) {
    Node n;
    n.name = name;
    n.kind = kind;
    n.labels = std::move(extra_labels);
    n.labels["site"] = name;
    n.labels.emplace("accelerator", "none");
    n.taints = std::move(taints);
    spec.nodes.push_back(std::move(n));
  };
  add_node("dc-0", NodeKind::Datacenter);
  add_node("dc-1", NodeKind::Datacenter);
  add_node("dc-2", NodeKind::Datacenter);
  add_node("cloudlet-0", NodeKind::Cloudlet);
  add_node("edge-0", NodeKind::Edge, {{"kind", "edge"}});
  add_node("ran-0", NodeKind::Ran, {{"role", "ran"}});
  add_node("dn-0", NodeKind::Datacenter, {{"role", "dn"}}, {{"role", "dn"}});
  add_node("ueplane-0", NodeKind::Ran, {{"role", "ue-plane"}}, {{"role", "ue-plane"}});

  // Full mesh between the seven workers; the device plane reaches only the
  // RAN node, over the fixed-latency radio link.
  std::vector<std::string> workers = {"dc-0", "dc-1", "dc-2", "cloudlet-0",
                                      "edge-0", "ran-0", "dn-0"};
  for (const auto& a : workers) {
    for (const auto& b : workers) {
      if (a == b) continue;
      Link l;
      l.src = a;
      l.dst = b;
      l.base_latency_ms = cfg.base_ms;
      l.bandwidth_bps = cfg.bandwidth_bps;
      spec.links.push_back(std::move(l));
    }
  }
  for (auto [a, b] : {std::pair{"ueplane-0", "ran-0"}, std::pair{"ran-0", "ueplane-0"}}) {
    Link l;
    l.src = a;
    l.dst = b;
    l.cls = LinkClass::Radio;
    l.base_latency_ms = cfg.radio_ms;
    l.bandwidth_bps = cfg.bandwidth_bps;
    spec.links.push_back(std::move(l));
  }
  return spec;
}

namespace {

PodSpec nf_pod(NFKind kind, int cpu_mc, int mem_mb) {
  PodSpec pod;
  pod.name = std::string(to_string(kind));
  pod.nf_kind = kind;
  pod.cpu_request_mc = cpu_mc;
  pod.mem_request_mb = mem_mb;
  return pod;
}

void apply_rule(PodSpec& pod, const NfPlacementRule& rule) {
  pod.node_selector = rule.node_selector;
  if (rule.pin) pod.pinned_node = rule.pin;
  for (const auto& tol : rule.tolerations) {
    if (std::find(pod.tolerations.begin(), pod.tolerations.end(), tol) ==
        pod.tolerations.end()) {
      pod.tolerations.push_back(tol);
    }
  }
}

}  // namespace

CoreDeployment instantiate_core(Topology& topo, const ArchitecturePreset& preset,
                                const PlacementOverrides& overrides, int n_ues) {
  std::vector<PodSpec> pods;
  // DCCORE first: the spreading scheduler then keeps AMF and SMF off the
  // subscriber-database node, which is where registration traffic lands.
  for (NFKind kind : {NFKind::DCCORE, NFKind::AMF, NFKind::SMF, NFKind::UPF}) {
    PodSpec pod = nf_pod(kind, 500, 512);
    if (auto it = preset.nf_rules.find(kind); it != preset.nf_rules.end()) {
      apply_rule(pod, it->second);
    }
    pods.push_back(std::move(pod));
  }
  PodSpec gnb = nf_pod(NFKind::GNB, 200, 256);
  gnb.pinned_node = "ran-0";
  gnb.tolerations = {{"role", "ran"}};
  pods.push_back(std::move(gnb));
  PodSpec dn = nf_pod(NFKind::DN, 200, 256);
  dn.pinned_node = "dn-0";
  dn.tolerations = {{"role", "dn"}};
  pods.push_back(std::move(dn));
  for (int i = 0; i < n_ues; ++i) {
    char name[16];
    std::snprintf(name, sizeof(name), "ue-%03d", i);
    PodSpec uep = nf_pod(NFKind::UE, 10, 16);
    uep.name = name;
    uep.pinned_node = "ueplane-0";
    uep.tolerations = {{"role", "ue-plane"}};
    pods.push_back(std::move(uep));
  }

  for (const auto& [kind, selector] : overrides.selectors) {
    for (auto& pod : pods) {
      if (pod.nf_kind == kind) pod.node_selector = selector;
    }
  }
  for (const auto& [kind, tols] : overrides.tolerations) {
    for (auto& pod : pods) {
      if (pod.nf_kind == kind) {
        for (const auto& tol : tols) {
          if (std::find(pod.tolerations.begin(), pod.tolerations.end(), tol) ==
              pod.tolerations.end()) {
            pod.tolerations.push_back(tol);
          }
        }
      }
    }
  }
  for (const auto& [kind, node] : overrides.pins) {
    pods = pin(std::move(pods), std::string(to_string(kind)), node);
  }

  Assignment assignment = schedule(pods, topo);
  for (const auto& pod : pods) {
    topo.assign_pod(pod.name, *assignment.node_of(pod.name));
  }

  const std::string& gnb_node = *assignment.node_of("gnb");
  const std::string& amf_node = *assignment.node_of("amf");
  const std::string& smf_node = *assignment.node_of("smf");
  const std::string& upf_node = *assignment.node_of("upf");
  const std::string& dn_node = *assignment.node_of("dn");
  auto inject = [&topo](const std::string& a, const std::string& b, double ms, LinkClass cls) {
    if (a == b) return;
    topo.set_additional_latency(a, b, ms);
    topo.set_link_class(a, b, cls);
  };
  inject(gnb_node, amf_node, preset.n2_ms, LinkClass::N2);
  inject(gnb_node, upf_node, preset.n3_ms, LinkClass::N3);
  inject(smf_node, upf_node, preset.n4_ms, LinkClass::N4);
  inject(upf_node, dn_node, preset.n6_ms, LinkClass::N6);
  for (const auto& cloudlet : topo.nodes()) {
    if (cloudlet.kind != NodeKind::Cloudlet) continue;
    for (const auto& dc : topo.nodes()) {
      if (dc.kind != NodeKind::Datacenter) continue;
      inject(cloudlet.name, dc.name, preset.dc_cloudlet_ms, LinkClass::DcCloudlet);
    }
  }
  return CoreDeployment{std::move(pods), std::move(assignment)};
}

}  // namespace contsim
