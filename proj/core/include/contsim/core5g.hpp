#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "contsim/engine.hpp"
#include "contsim/nf.hpp"
#include "contsim/placement.hpp"
#include "contsim/topology.hpp"

namespace contsim {

enum class Procedure { Registration, PduEstablishment, DataTransfer };
enum class Outcome { Success, Timeout, Abandoned };
enum class UEState { Deregistered, Registering, Registered, SessionActive, Failed };
enum class Direction { Up, Down, UpDown };

std::string_view to_string(Procedure p);
std::string_view to_string(Outcome o);
std::string_view to_string(Direction d);
Direction direction_from_string(std::string_view name);

/// Classification of a control-flow leg. Every class except Local resolves
/// to the latency between the endpoint pods' nodes; Local models the
/// service-routed hop between co-managed control NFs at the substrate base
/// latency regardless of co-location.
enum class LegClass { Radio, N2, N3, N4, N6, Local, AmfDc, SmfDc };

std::string_view to_string(LegClass cls);
LegClass leg_class_from_string(std::string_view name);

struct FlowLeg {
  NFKind from;
  NFKind to;
  LegClass cls;
  int64_t payload_bytes = 512;
};

/// Normative message sequence of one control procedure. The default tables
/// are data, overridable per scenario.
struct FlowTable {
  Procedure procedure;
  std::vector<FlowLeg> legs;
};

/// Registration: request over the air, two authentication round trips into
/// the datacenter core, an air-interface challenge/response, two subscriber
/// round trips, then accept/complete. 5 radio, 5 N2 and 8 core legs.
FlowTable registration_flow(int64_t control_bytes = 512);

/// PDU session establishment: request, AMF<->SMF handoffs, one policy round
/// trip to the datacenter core, session setup and modify round trips to the
/// UPF, and the air-interface acknowledgements. Traffic splits between the
/// datacenter and the UPF's site.
FlowTable pdu_establishment_flow(int64_t control_bytes = 512);

struct UEContext {
  std::string ue_id;
  UEState state = UEState::Deregistered;
  int attempts_used = 0;
  std::string gnb = "gnb";
  int64_t registration_messages = 0;
  int64_t pdu_messages = 0;
  int64_t transfer_messages = 0;
};

struct ProcedureResult {
  std::string ue_id;
  Procedure procedure = Procedure::Registration;
  double start_ms = 0;
  double end_ms = 0;
  Outcome outcome = Outcome::Success;
  int attempts = 1;
  int64_t messages_sent = 0;
};

/// Scenario-level model defaults.
struct CoreConfig {
  double radio_ms = 2.0;       // fixed one-way air-interface hop
  double base_ms = 0.5;        // substrate latency between distinct nodes
  double loopback_ms = 0.05;
  double bandwidth_bps = 1e9;
  double registration_timer_ms = 1000.0;
  double session_timer_ms = 1000.0;
  int max_retries = 2;
  int64_t chunk_bytes = 1500;
  int64_t control_message_bytes = 512;
  std::map<NFKind, double> proc_ms;  // per-message handling delay, default 0

  double nf_proc_ms(NFKind kind) const {
    auto it = proc_ms.find(kind);
    return it == proc_ms.end() ? 0.0 : it->second;
  }
};

/// Runs the control procedures and user-plane transfers of one scenario on
/// top of the engine. NF state is owned by the instance; a procedure whose
/// timer expired keeps flowing in the background (the network still carries
/// and processes it) while the UE retries, which is what makes retries cost
/// control-plane messages.
class CoreSimulation {
 public:
  CoreSimulation(Topology& topo, CoreConfig cfg, FlowTable reg_flow, FlowTable pdu_flow);

  Engine& engine() { return engine_; }
  Network& network() { return net_; }
  const CoreConfig& config() const { return cfg_; }

  /// Declares the NF kind behind each pod name (processing-delay lookup).
  void register_pods(const std::vector<PodSpec>& pods);

  UEContext& add_ue(const std::string& ue_id, UEState initial = UEState::Deregistered);
  UEContext& ue(const std::string& ue_id);

  using DoneFn = std::function<void(const ProcedureResult&)>;

  void start_registration(const std::string& ue_id, DoneFn done);
  void start_pdu_establishment(const std::string& ue_id, DoneFn done);

  struct TransferOptions {
    int64_t payload_bytes = 0;
    Direction direction = Direction::Up;
    double server_proc_ms = 0;
    double stream_rate_bps = 0;  // > 0: the source paces chunk emissions
    int64_t response_bytes = 0;  // UpDown: reply payload
  };
  struct ChunkResult {
    std::string ue_id;
    int64_t index = 0;
    int64_t size_bytes = 0;
    double departure_ms = 0;  // serialization start at the source egress
    double delivery_ms = 0;   // arrival at the final hop
  };
  using ChunkFn = std::function<void(const ChunkResult&)>;

  void start_data_transfer(const std::string& ue_id, TransferOptions opt, DoneFn done,
                           ChunkFn on_chunk = {});

  /// Single-procedure helpers: start, drain the engine, return the result.
  ProcedureResult run_registration(const std::string& ue_id);
  ProcedureResult run_pdu_establishment(const std::string& ue_id);
  ProcedureResult run_data_transfer(const std::string& ue_id, int64_t payload_bytes,
                                    Direction direction, double server_proc_ms);

  /// Results with message counters finalized; call after the engine drained.
  std::vector<ProcedureResult> take_results();

 private:
  struct ProcState;
  struct TransferState;

  std::string pod_for(NFKind kind, const std::string& ue_id) const;
  int64_t* message_counter(const std::string& ue_id, Procedure p);
  double timer_for(Procedure p) const;
  void after_processing(const std::string& pod, std::function<void()> cont);
  void start_attempt(std::shared_ptr<ProcState> st);
  void advance_leg(std::shared_ptr<ProcState> st, int attempt, size_t idx);
  void complete_attempt(std::shared_ptr<ProcState> st, int attempt);
  void on_procedure_timer(std::shared_ptr<ProcState> st, int attempt);
  void finish(std::shared_ptr<ProcState> st, Outcome outcome);
  void start_procedure(const std::string& ue_id, Procedure p, DoneFn done);

  std::vector<std::string> transfer_path(const std::string& ue_id, bool uplink) const;
  void emit_chunks(std::shared_ptr<TransferState> st);
  void launch_chunk(std::shared_ptr<TransferState> st, int64_t index, int64_t size,
                    double at);
  void forward_chunk(std::shared_ptr<TransferState> st, int64_t index, int64_t size,
                     size_t hop, double departure);
  void chunk_delivered(std::shared_ptr<TransferState> st, int64_t index, double departure,
                       double delivery, int64_t size);
  void phase_complete(std::shared_ptr<TransferState> st);
  void finish_transfer(std::shared_ptr<TransferState> st);

  Topology* topo_;
  CoreConfig cfg_;
  FlowTable reg_flow_;
  FlowTable pdu_flow_;
  Engine engine_;
  Network net_;
  std::map<std::string, UEContext> ues_;
  std::map<std::string, NFKind> pod_kinds_;
  std::map<std::string, double> pod_busy_ms_;
  std::vector<ProcedureResult> results_;
};

/// Per-NF placement constraints of an architecture profile.
struct NfPlacementRule {
  std::map<std::string, std::string> node_selector;
  std::optional<std::string> pin;
  std::vector<Taint> tolerations;
};

/// One of the three system architectures: the five additional link
/// latencies plus where each control/user-plane NF goes.
struct ArchitecturePreset {
  std::string name;
  double n2_ms = 0;
  double n3_ms = 0;
  double n4_ms = 0;
  double n6_ms = 0;
  double dc_cloudlet_ms = 0;
  std::map<NFKind, NfPlacementRule> nf_rules;
};

ArchitecturePreset baseline_preset();
ArchitecturePreset latopt_preset();
ArchitecturePreset accessopt_preset();
ArchitecturePreset preset_by_name(std::string_view name);

/// Default node inventory: three datacenter nodes, one cloudlet, one edge,
/// one RAN and one data-network worker, plus the device-plane node holding
/// UE pods behind the fixed-latency radio link.
TopologySpec default_inventory(const CoreConfig& cfg);

struct PlacementOverrides {
  std::map<NFKind, std::string> pins;
  std::map<NFKind, std::map<std::string, std::string>> selectors;
  std::map<NFKind, std::vector<Taint>> tolerations;
};

struct CoreDeployment {
  std::vector<PodSpec> pods;
  Assignment assignment;
};

/// Builds the pod set for one scenario (one pod per NF instance plus gNB,
/// data network and UE pods), schedules it, registers placements with the
/// topology, and injects the preset's additional latencies onto the links
/// realized by that placement.
CoreDeployment instantiate_core(Topology& topo, const ArchitecturePreset& preset,
                                const PlacementOverrides& overrides, int n_ues);

}  // namespace contsim
