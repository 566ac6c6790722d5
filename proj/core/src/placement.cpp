#include "contsim/placement.hpp"

#include <algorithm>

#include "contsim/error.hpp"

namespace contsim {

std::string_view to_string(NFKind kind) {
  switch (kind) {
    case NFKind::AMF: return "amf";
    case NFKind::SMF: return "smf";
    case NFKind::UPF: return "upf";
    case NFKind::DCCORE: return "dccore";
    case NFKind::GNB: return "gnb";
    case NFKind::UE: return "ue";
    case NFKind::DN: return "dn";
  }
  return "dccore";
}

NFKind nf_kind_from_string(std::string_view name) {
  if (name == "amf") return NFKind::AMF;
  if (name == "smf") return NFKind::SMF;
  if (name == "upf") return NFKind::UPF;
  if (name == "dccore") return NFKind::DCCORE;
  if (name == "gnb") return NFKind::GNB;
  if (name == "ue") return NFKind::UE;
  if (name == "dn") return NFKind::DN;
  throw SimError(Errc::InvalidValue, "unknown NF kind '" + std::string(name) + "'");
}

void Assignment::assign(const PodSpec& pod, const std::string& node) {
  pod_to_node_[pod.name] = node;
  cpu_used_[node] += pod.cpu_request_mc;
  mem_used_[node] += pod.mem_request_mb;
}

const std::string* Assignment::node_of(const std::string& pod) const {
  auto it = pod_to_node_.find(pod);
  return it == pod_to_node_.end() ? nullptr : &it->second;
}

int Assignment::cpu_used_mc(const std::string& node) const {
  auto it = cpu_used_.find(node);
  return it == cpu_used_.end() ? 0 : it->second;
}

int Assignment::mem_used_mb(const std::string& node) const {
  auto it = mem_used_.find(node);
  return it == mem_used_.end() ? 0 : it->second;
}

bool tolerates(const PodSpec& pod, const Taint& taint) {
  return std::find(pod.tolerations.begin(), pod.tolerations.end(), taint) !=
         pod.tolerations.end();
}

namespace {

bool node_passes_filters(const PodSpec& pod, const Node& node, const Assignment& current) {
  for (const auto& [key, value] : pod.node_selector) {
    auto it = node.labels.find(key);
    if (it == node.labels.end() || it->second != value) return false;
  }
  for (const auto& taint : node.taints) {
    if (!tolerates(pod, taint)) return false;
  }
  int cpu_left = node.cpu_capacity_mc - current.cpu_used_mc(node.name);
  int mem_left = node.mem_capacity_mb - current.mem_used_mb(node.name);
  return cpu_left >= pod.cpu_request_mc && mem_left >= pod.mem_request_mb;
}

}  // namespace

std::set<std::string> feasible_nodes(const PodSpec& pod, const Topology& t,
                                     const Assignment& current) {
  std::set<std::string> result;
  for (const auto& node : t.nodes()) {
    if (node_passes_filters(pod, node, current)) result.insert(node.name);
  }
  return result;
}

Assignment schedule(const std::vector<PodSpec>& pods, const Topology& t) {
  Assignment assignment;
  for (const auto& pod : pods) {
    if (pod.cpu_request_mc <= 0 || pod.mem_request_mb <= 0) {
      throw SimError(Errc::InvalidRequest,
                     "pod '" + pod.name + "' must request positive cpu and memory");
    }
    std::set<std::string> feasible = feasible_nodes(pod, t, assignment);
    if (pod.pinned_node) {
      if (!feasible.count(*pod.pinned_node)) {
        throw SimError(Errc::PinnedInfeasible,
                       "pod '" + pod.name + "' is pinned to infeasible node '" +
                           *pod.pinned_node + "'");
      }
      assignment.assign(pod, *pod.pinned_node);
      continue;
    }
    if (feasible.empty()) {
      throw SimError(Errc::Unschedulable, "no feasible node for pod '" + pod.name + "'");
    }
    // Least-allocated scoring: most remaining cpu wins, then smallest name.
    // std::set iterates names in order, so strict > keeps the tie-break.
    std::string best;
    int best_cpu_left = -1;
    for (const auto& name : feasible) {
      int cpu_left = t.node(name).cpu_capacity_mc - assignment.cpu_used_mc(name);
      if (cpu_left > best_cpu_left) {
        best = name;
        best_cpu_left = cpu_left;
      }
    }
    assignment.assign(pod, best);
  }
  return assignment;
}

std::vector<PodSpec> pin(std::vector<PodSpec> pods, const std::string& pod,
                         const std::string& node) {
  auto it = std::find_if(pods.begin(), pods.end(),
                         [&pod](const PodSpec& p) { return p.name == pod; });
  if (it == pods.end()) {
    throw SimError(Errc::UnknownPod, "cannot pin unknown pod '" + pod + "'");
  }
  it->pinned_node = node;
  return pods;
}

}  // namespace contsim
