#include "contsim/topology.hpp"

#include <algorithm>

#include "contsim/error.hpp"

namespace contsim {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DuplicateNode: return "duplicate_node";
    case Errc::UnknownNode: return "unknown_node";
    case Errc::DuplicateLink: return "duplicate_link";
    case Errc::InvalidCapacity: return "invalid_capacity";
    case Errc::InvalidLatency: return "invalid_latency";
    case Errc::InvalidBandwidth: return "invalid_bandwidth";
    case Errc::UnknownOwner: return "unknown_owner";
    case Errc::NoRoute: return "no_route";
    case Errc::UnknownPod: return "unknown_pod";
    case Errc::Unschedulable: return "unschedulable";
    case Errc::PinnedInfeasible: return "pinned_infeasible";
    case Errc::InvalidRequest: return "invalid_request";
    case Errc::DuplicateKpi: return "duplicate_kpi";
    case Errc::NegativeDuration: return "negative_duration";
    case Errc::EmptyGroup: return "empty_group";
    case Errc::MissingBaseline: return "missing_baseline";
    case Errc::ParseError: return "parse_error";
    case Errc::UnknownKey: return "unknown_key";
    case Errc::MissingField: return "missing_field";
    case Errc::InvalidValue: return "invalid_value";
    case Errc::UnknownParameter: return "unknown_parameter";
    case Errc::IoError: return "io_error";
  }
  return "unknown";
}

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Datacenter: return "datacenter";
    case NodeKind::Cloudlet: return "cloudlet";
    case NodeKind::Edge: return "edge";
    case NodeKind::Ran: return "ran";
  }
  return "datacenter";
}

NodeKind node_kind_from_string(std::string_view name) {
  if (name == "datacenter") return NodeKind::Datacenter;
  if (name == "cloudlet") return NodeKind::Cloudlet;
  if (name == "edge") return NodeKind::Edge;
  if (name == "ran") return NodeKind::Ran;
  throw SimError(Errc::InvalidValue, "unknown node kind '" + std::string(name) + "'");
}

std::string_view to_string(LinkClass cls) {
  switch (cls) {
    case LinkClass::N2: return "n2";
    case LinkClass::N3: return "n3";
    case LinkClass::N4: return "n4";
    case LinkClass::N6: return "n6";
    case LinkClass::DcCloudlet: return "dc_cloudlet";
    case LinkClass::Local: return "local";
    case LinkClass::Radio: return "radio";
    case LinkClass::Other: return "other";
  }
  return "other";
}

LinkClass link_class_from_string(std::string_view name) {
  if (name == "n2") return LinkClass::N2;
  if (name == "n3") return LinkClass::N3;
  if (name == "n4") return LinkClass::N4;
  if (name == "n6") return LinkClass::N6;
  if (name == "dc_cloudlet") return LinkClass::DcCloudlet;
  if (name == "local") return LinkClass::Local;
  if (name == "radio") return LinkClass::Radio;
  if (name == "other") return LinkClass::Other;
  throw SimError(Errc::InvalidValue, "unknown link class '" + std::string(name) + "'");
}

bool NodeMatch::matches(const Node& n) const {
  if (!node.empty()) return node == n.name;
  for (const auto& [key, value] : labels) {
    auto it = n.labels.find(key);
    if (it == n.labels.end() || it->second != value) return false;
  }
  return true;
}

Topology Topology::build(TopologySpec spec) {
  Topology t;
  t.loopback_ms_ = spec.loopback_ms;
  for (auto& node : spec.nodes) {
    if (t.node_index_.count(node.name)) {
      throw SimError(Errc::DuplicateNode, "duplicate node '" + node.name + "'");
    }
    if (node.cpu_capacity_mc <= 0 || node.mem_capacity_mb <= 0) {
      throw SimError(Errc::InvalidCapacity,
                     "node '" + node.name + "' must have positive cpu and memory capacity");
    }
    auto [it, inserted] = node.labels.emplace("kind", std::string(to_string(node.kind)));
    if (!inserted && it->second != to_string(node.kind)) {
      throw SimError(Errc::InvalidValue,
                     "node '" + node.name + "' label kind='" + it->second +
                         "' contradicts its kind");
    }
    t.node_index_[node.name] = t.nodes_.size();
    t.nodes_.push_back(std::move(node));
  }
  for (auto& link : spec.links) {
    if (!t.node_index_.count(link.src)) {
      throw SimError(Errc::UnknownNode, "link source '" + link.src + "' is not a node");
    }
    if (!t.node_index_.count(link.dst)) {
      throw SimError(Errc::UnknownNode, "link destination '" + link.dst + "' is not a node");
    }
    if (link.base_latency_ms < 0 || link.additional_latency_ms < 0) {
      throw SimError(Errc::InvalidLatency,
                     "link " + link.src + "->" + link.dst + " has negative latency");
    }
    if (link.bandwidth_bps <= 0) {
      throw SimError(Errc::InvalidBandwidth,
                     "link " + link.src + "->" + link.dst + " must have positive bandwidth");
    }
    auto key = std::make_pair(link.src, link.dst);
    if (t.link_index_.count(key)) {
      throw SimError(Errc::DuplicateLink,
                     "duplicate link " + link.src + "->" + link.dst);
    }
    t.link_index_[key] = t.links_.size();
    t.links_.push_back(std::move(link));
  }
  return t;
}

bool Topology::has_node(const std::string& name) const {
  return node_index_.count(name) > 0;
}

const Node& Topology::node(const std::string& name) const {
  auto it = node_index_.find(name);
  if (it == node_index_.end()) {
    throw SimError(Errc::UnknownNode, "unknown node '" + name + "'");
  }
  return nodes_[it->second];
}

const Link* Topology::find_link(const std::string& src, const std::string& dst) const {
  auto it = link_index_.find(std::make_pair(src, dst));
  return it == link_index_.end() ? nullptr : &links_[it->second];
}

Link* Topology::find_link(const std::string& src, const std::string& dst) {
  auto it = link_index_.find(std::make_pair(src, dst));
  return it == link_index_.end() ? nullptr : &links_[it->second];
}

void Topology::set_additional_latency(const std::string& a, const std::string& b, double ms) {
  if (ms < 0) throw SimError(Errc::InvalidLatency, "additional latency must be >= 0");
  Link* ab = find_link(a, b);
  Link* ba = find_link(b, a);
  if (!ab || !ba) {
    throw SimError(Errc::NoRoute, "no link pair between '" + a + "' and '" + b + "'");
  }
  ab->additional_latency_ms = ms;
  ba->additional_latency_ms = ms;
}

void Topology::set_link_class(const std::string& a, const std::string& b, LinkClass cls) {
  Link* ab = find_link(a, b);
  Link* ba = find_link(b, a);
  if (!ab || !ba) {
    throw SimError(Errc::NoRoute, "no link pair between '" + a + "' and '" + b + "'");
  }
  ab->cls = cls;
  ba->cls = cls;
}

void Topology::assign_pod(const std::string& pod, const std::string& node) {
  if (!has_node(node)) {
    throw SimError(Errc::UnknownNode, "cannot place pod '" + pod + "' on unknown node '" + node + "'");
  }
  pod_nodes_[pod] = node;
}

const std::string* Topology::pod_node(const std::string& pod) const {
  auto it = pod_nodes_.find(pod);
  return it == pod_nodes_.end() ? nullptr : &it->second;
}

void Topology::add_shaping(ShapingRule rule) {
  if (!pod_nodes_.count(rule.owner_pod)) {
    throw SimError(Errc::UnknownOwner,
                   "shaping owner pod '" + rule.owner_pod + "' is not placed");
  }
  if (rule.delay_ms < 0) throw SimError(Errc::InvalidLatency, "shaping delay must be >= 0");
  if (rule.rate_bps && *rule.rate_bps <= 0) {
    throw SimError(Errc::InvalidBandwidth, "shaping rate must be positive when bounded");
  }
  auto same_target = [&rule](const ShapingRule& r) {
    return r.owner_pod == rule.owner_pod && r.dst == rule.dst;
  };
  shaping_.erase(std::remove_if(shaping_.begin(), shaping_.end(), same_target), shaping_.end());
  shaping_.push_back(std::move(rule));
}

double Topology::effective_latency(const std::string& src_node,
                                   const std::string& dst_node) const {
  const Node& dst = node(dst_node);
  if (src_node == dst_node) {
    node(src_node);  // validate existence
    return loopback_ms_;
  }
  const Link* link = find_link(src_node, dst_node);
  if (!link) {
    throw SimError(Errc::NoRoute, "no link " + src_node + "->" + dst_node);
  }
  double latency = link->base_latency_ms + link->additional_latency_ms;
  for (const auto& rule : shaping_) {
    auto owner = pod_nodes_.find(rule.owner_pod);
    if (owner == pod_nodes_.end() || owner->second != src_node) continue;
    if (rule.dst.matches(dst)) latency += rule.delay_ms;
  }
  return latency;
}

double Topology::egress_rate(const std::string& src_node, const std::string& dst_node) const {
  const Node& dst = node(dst_node);
  if (src_node == dst_node) return 0;  // loopback: serialization not modeled
  const Link* link = find_link(src_node, dst_node);
  if (!link) {
    throw SimError(Errc::NoRoute, "no link " + src_node + "->" + dst_node);
  }
  double rate = link->bandwidth_bps;
  for (const auto& rule : shaping_) {
    if (!rule.rate_bps) continue;
    auto owner = pod_nodes_.find(rule.owner_pod);
    if (owner == pod_nodes_.end() || owner->second != src_node) continue;
    if (rule.dst.matches(dst)) rate = std::min(rate, *rule.rate_bps);
  }
  return rate;
}

Topology build_topology(TopologySpec spec) { return Topology::build(std::move(spec)); }

Topology apply_shaping(Topology t, ShapingRule rule) {
  t.add_shaping(std::move(rule));
  return t;
}

double effective_latency(const Topology& t, const std::string& src_node,
                         const std::string& dst_node) {
  return t.effective_latency(src_node, dst_node);
}

double transmission_time_ms(int64_t size_bytes, double latency_ms, double rate_bps) {
  if (size_bytes == 0) return latency_ms;
  return latency_ms + static_cast<double>(size_bytes) * 8.0 / rate_bps * 1000.0;
}

}  // namespace contsim
