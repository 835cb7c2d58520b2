// Copyright 2026 The resilient-te Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Network data model. NetworkInstance is the plain document form (string
// ids, as serialized); Network is the validated, index-based view that all
// algorithms consume.

#ifndef RTE_NET_H_
#define RTE_NET_H_

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rte/error.h"

namespace rte {

struct Link {
  std::string id;
  std::string u;
  std::string v;
  double capacity = 0.0;
  std::optional<double> fail_prob;
  bool operator==(const Link&) const = default;
};

struct Tunnel {
  std::string id;
  std::string src;
  std::string dst;
  std::vector<std::string> path;  // link ids, in travel order
  bool operator==(const Tunnel&) const = default;
};

struct LogicalSequence {
  std::string id;
  std::string src;
  std::string dst;
  std::vector<std::string> hops;  // src, v1, ..., dst
  std::string condition;          // empty: always active
  bool operator==(const LogicalSequence&) const = default;
};

struct Condition {
  std::string id;
  std::vector<std::string> alive_links;
  std::vector<std::string> dead_links;
  bool operator==(const Condition&) const = default;
};

struct FlowDemand {
  std::string flow_id;
  std::string src;
  std::string dst;
  double demand = 0.0;
  std::optional<double> loss_threshold;
  std::optional<double> beta;
  bool operator==(const FlowDemand&) const = default;
};

struct Scenario {
  std::vector<std::string> failed_links;
  std::optional<double> prob;
  bool operator==(const Scenario&) const = default;
};

struct NetworkInstance {
  std::string name;
  std::vector<std::string> nodes;
  std::vector<Link> links;
  std::vector<FlowDemand> demands;
  std::vector<Tunnel> tunnels;
  std::vector<LogicalSequence> sequences;
  std::vector<Condition> conditions;
  std::vector<Scenario> scenarios;
  std::optional<double> beta;
  std::optional<double> scenario_cutoff;
  bool operator==(const NetworkInstance&) const = default;
};

struct Diagnostic {
  std::string code;  // e.g. "TUNNEL_DISCONTIGUOUS"
  std::string message;
};

// Empty iff every structural invariant holds.
std::vector<Diagnostic> validate_instance(const NetworkInstance& instance);

struct NodePair {
  int src = -1;
  int dst = -1;
  auto operator<=>(const NodePair&) const = default;
};

class Network {
 public:
  // Throws Error(kInvalidInstance) carrying every diagnostic.
  explicit Network(NetworkInstance instance);

  const NetworkInstance& instance() const { return inst_; }

  int num_nodes() const { return static_cast<int>(inst_.nodes.size()); }
  int num_links() const { return static_cast<int>(inst_.links.size()); }
  int num_tunnels() const { return static_cast<int>(inst_.tunnels.size()); }
  int num_sequences() const { return static_cast<int>(inst_.sequences.size()); }
  int num_conditions() const { return static_cast<int>(inst_.conditions.size()); }
  int num_flows() const { return static_cast<int>(inst_.demands.size()); }

  // Id lookups throw Error(kUnknownId).
  int node(std::string_view id) const;
  int link(std::string_view id) const;
  int tunnel(std::string_view id) const;
  int sequence(std::string_view id) const;
  int condition(std::string_view id) const;

  const std::string& node_id(int v) const { return inst_.nodes[v]; }
  const std::string& link_id(int e) const { return inst_.links[e].id; }
  int link_u(int e) const { return link_ends_[e].src; }
  int link_v(int e) const { return link_ends_[e].dst; }
  double capacity(int e) const { return inst_.links[e].capacity; }
  const std::vector<int>& incident_links(int v) const { return incident_[v]; }

  NodePair tunnel_pair(int l) const { return tunnel_pair_[l]; }
  const std::vector<int>& tunnel_links(int l) const { return tunnel_links_[l]; }
  // Node sequence of a tunnel, src first.
  const std::vector<int>& tunnel_nodes(int l) const { return tunnel_nodes_[l]; }

  NodePair sequence_pair(int q) const { return seq_pair_[q]; }
  const std::vector<int>& sequence_hops(int q) const { return seq_hops_[q]; }
  std::vector<NodePair> sequence_segments(int q) const;
  int sequence_condition(int q) const { return seq_cond_[q]; }  // -1: none

  const std::vector<int>& condition_alive(int c) const { return cond_alive_[c]; }
  const std::vector<int>& condition_dead(int c) const { return cond_dead_[c]; }

  NodePair flow_pair(int f) const { return flow_pair_[f]; }

  // Tunnels/sequences whose endpoints are `p`, in declaration order.
  const std::vector<int>& tunnels_of(NodePair p) const;
  const std::vector<int>& sequences_of(NodePair p) const;
  // Aggregate demand over all flows on the pair.
  double demand(NodePair p) const;
  // Pairs with positive demand, sorted.
  std::vector<NodePair> demand_pairs() const;
  // Pairs with at least one tunnel, sorted.
  std::vector<NodePair> tunnel_pairs() const;

  // Link indices ordered by id string; the canonical scenario order.
  const std::vector<int>& links_by_id() const { return links_by_id_; }

  std::string pair_name(NodePair p) const {
    return node_id(p.src) + "->" + node_id(p.dst);
  }

 private:
  NetworkInstance inst_;
  std::unordered_map<std::string, int> node_idx_, link_idx_, tunnel_idx_,
      seq_idx_, cond_idx_;
  std::vector<NodePair> link_ends_;
  std::vector<std::vector<int>> incident_;
  std::vector<NodePair> tunnel_pair_;
  std::vector<std::vector<int>> tunnel_links_;
  std::vector<std::vector<int>> tunnel_nodes_;
  std::vector<NodePair> seq_pair_;
  std::vector<std::vector<int>> seq_hops_;
  std::vector<int> seq_cond_;
  std::vector<std::vector<int>> cond_alive_, cond_dead_;
  std::vector<NodePair> flow_pair_;
  std::map<NodePair, std::vector<int>> tunnels_by_pair_, seqs_by_pair_;
  std::map<NodePair, double> demand_by_pair_;
  std::vector<int> links_by_id_;
};

// Failure state indexed by link: 1 = failed.
using LinkMask = std::vector<char>;

LinkMask make_mask(const Network& net, const std::vector<int>& failed);
std::vector<int> scenario_links(const Network& net, const Scenario& s);
Scenario make_scenario(const Network& net, const std::vector<int>& failed);

bool tunnel_alive(const Network& net, int tunnel, const LinkMask& failed);
bool condition_active(const Network& net, int condition, const LinkMask& failed);
bool sequence_active(const Network& net, int sequence, const LinkMask& failed);

// Document-level forms; unknown link ids throw Error(kUnknownId).
bool tunnel_alive(const Network& net, const Tunnel& tunnel,
                  const Scenario& scenario);
bool condition_active(const Network& net, const Condition& cond,
                      const Scenario& scenario);

// Number of link subsets of size 0..k (k clamped to |E|).
double count_failure_sets(int num_links, int k);

// All link subsets of size 0..k by size, then lexicographic id tuple.
// Throws Error(kScenarioBlowup) when the count exceeds `guard`.
std::vector<std::vector<int>> enumerate_failure_sets(const Network& net, int k,
                                                     double guard = 1e6);
std::vector<Scenario> enumerate_scenarios(const Network& net, int k);

}  // namespace rte

#endif  // RTE_NET_H_
