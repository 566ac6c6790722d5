#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "contsim/nf.hpp"
#include "contsim/topology.hpp"

namespace contsim {

/// Scheduling request for one pod.
struct PodSpec {
  std::string name;
  NFKind nf_kind = NFKind::DCCORE;
  int cpu_request_mc = 100;
  int mem_request_mb = 64;
  std::map<std::string, std::string> node_selector;
  std::vector<Taint> tolerations;
  std::optional<std::string> pinned_node;
};

/// Pod -> node mapping produced by the scheduler, with per-node usage
/// bookkeeping so later placements see remaining capacity.
class Assignment {
 public:
  void assign(const PodSpec& pod, const std::string& node);
  const std::string* node_of(const std::string& pod) const;
  const std::map<std::string, std::string>& entries() const { return pod_to_node_; }

  int cpu_used_mc(const std::string& node) const;
  int mem_used_mb(const std::string& node) const;

 private:
  std::map<std::string, std::string> pod_to_node_;
  std::map<std::string, int> cpu_used_;
  std::map<std::string, int> mem_used_;
};

bool tolerates(const PodSpec& pod, const Taint& taint);

/// Nodes that match the pod's selector, tolerate every taint, and still have
/// room for its requests given `current`. Empty set is a valid result.
std::set<std::string> feasible_nodes(const PodSpec& pod, const Topology& t,
                                     const Assignment& current);

/// Places pods in declaration order: pinned pods go to their pinned node
/// when feasible, others to the feasible node with the most remaining cpu,
/// ties broken by smallest node name. Throws Unschedulable/PinnedInfeasible.
Assignment schedule(const std::vector<PodSpec>& pods, const Topology& t);

/// Returns the pod list with `pod` pinned to `node` (last pin wins).
std::vector<PodSpec> pin(std::vector<PodSpec> pods, const std::string& pod,
                         const std::string& node);

}  // namespace contsim
