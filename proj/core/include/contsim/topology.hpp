#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace contsim {

enum class NodeKind { Datacenter, Cloudlet, Edge, Ran };

std::string_view to_string(NodeKind kind);
NodeKind node_kind_from_string(std::string_view name);

/// Node-side repulsion marker. Only the NoSchedule effect is modeled; a pod
/// must carry a matching toleration to land on a tainted node.
struct Taint {
  std::string key;
  std::string value;

  friend bool operator==(const Taint&, const Taint&) = default;
};

/// A compute node of the continuum. Labels always contain "kind"; the
/// conventional label keys are {kind, site, accelerator}.
struct Node {
  std::string name;
  NodeKind kind = NodeKind::Datacenter;
  std::map<std::string, std::string> labels;
  int cpu_capacity_mc = 2000;   // millicores
  int mem_capacity_mb = 4096;
  std::vector<Taint> taints;
};

/// Reference-link roles. Only the roles that carry an architecture latency
/// are classified; plain substrate links stay Other.
enum class LinkClass { N2, N3, N4, N6, DcCloudlet, Local, Radio, Other };

std::string_view to_string(LinkClass cls);
LinkClass link_class_from_string(std::string_view name);

/// Directed link. Latency seen by traffic is base + additional (+ shaping);
/// `additional_latency_ms` is where an architecture profile injects distance.
struct Link {
  std::string src;
  std::string dst;
  std::optional<LinkClass> cls;
  double base_latency_ms = 0.5;
  double additional_latency_ms = 0.0;
  double bandwidth_bps = 1e9;
};

/// Destination selector of a shaping rule: exact node name, or a label set
/// that must all match.
struct NodeMatch {
  std::string node;                            // exact match when nonempty
  std::map<std::string, std::string> labels;   // otherwise all must match

  bool matches(const Node& n) const;

  friend bool operator==(const NodeMatch&, const NodeMatch&) = default;
};

/// Egress shaping attached to a pod, mirroring a delay/rate side-car on that
/// pod. Applies to traffic leaving the owner's node toward matching nodes.
struct ShapingRule {
  std::string owner_pod;
  NodeMatch dst;
  double delay_ms = 0.0;
  std::optional<double> rate_bps;   // nullopt = unlimited
};

struct TopologySpec {
  std::vector<Node> nodes;
  std::vector<Link> links;
  double loopback_ms = 0.05;
};

/// Validated node/link graph plus the pod placements and shaping overlays
/// that routing queries consult. Mutable while a scenario is being set up,
/// then shared read-only by the running simulation.
class Topology {
 public:
  static Topology build(TopologySpec spec);

  const std::vector<Node>& nodes() const { return nodes_; }
  bool has_node(const std::string& name) const;
  const Node& node(const std::string& name) const;

  const Link* find_link(const std::string& src, const std::string& dst) const;
  Link* find_link(const std::string& src, const std::string& dst);
  const std::vector<Link>& links() const { return links_; }

  /// Sets the additional latency of both directed links between a and b.
  void set_additional_latency(const std::string& a, const std::string& b, double ms);
  void set_link_class(const std::string& a, const std::string& b, LinkClass cls);

  /// Registers where a pod runs; required before routing to/from it.
  void assign_pod(const std::string& pod, const std::string& node);
  const std::string* pod_node(const std::string& pod) const;
  const std::map<std::string, std::string>& pod_nodes() const { return pod_nodes_; }

  /// Appends a shaping rule, replacing an earlier rule with the same
  /// (owner, destination selector). The owner pod must be placed.
  void add_shaping(ShapingRule rule);
  const std::vector<ShapingRule>& shaping() const { return shaping_; }

  double loopback_ms() const { return loopback_ms_; }

  /// One-way latency between two nodes: loopback for the same node,
  /// otherwise base + additional + delays of shaping rules owned by pods on
  /// src whose selector matches dst. Throws NoRoute when no link exists.
  double effective_latency(const std::string& src_node, const std::string& dst_node) const;

  /// Serialization rate available on the src -> dst egress: link bandwidth
  /// capped by the tightest matching shaping rate.
  double egress_rate(const std::string& src_node, const std::string& dst_node) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::vector<ShapingRule> shaping_;
  std::map<std::string, std::string> pod_nodes_;
  std::map<std::string, size_t> node_index_;
  std::map<std::pair<std::string, std::string>, size_t> link_index_;
  double loopback_ms_ = 0.05;
};

/// Builds and validates a topology from its description.
Topology build_topology(TopologySpec spec);

/// Returns a copy of `t` with `rule` applied (replacement semantics).
Topology apply_shaping(Topology t, ShapingRule rule);

/// Latency between the nodes hosting two pods' endpoints.
double effective_latency(const Topology& t, const std::string& src_node,
                         const std::string& dst_node);

/// Store-and-forward cost of one hop in milliseconds:
/// latency + size * 8 / rate.
double transmission_time_ms(int64_t size_bytes, double latency_ms, double rate_bps);

}  // namespace contsim
