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

#include "rte/net.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace rte {
namespace {

void diag(std::vector<Diagnostic>* out, const char* code, std::string msg) {
  out->push_back({code, std::move(msg)});
}

bool prob_ok(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

const std::vector<int>& empty_list() {
  static const std::vector<int> kEmpty;
  return kEmpty;
}

}  // namespace

std::vector<Diagnostic> validate_instance(const NetworkInstance& inst) {
  std::vector<Diagnostic> out;
  std::set<std::string> nodes;
  for (const std::string& v : inst.nodes) {
    if (v.empty()) diag(&out, "EMPTY_ID", "node with empty id");
    if (!nodes.insert(v).second) diag(&out, "DUPLICATE_NODE", "node " + v);
  }
  std::unordered_map<std::string, const Link*> links;
  for (const Link& l : inst.links) {
    if (!links.emplace(l.id, &l).second) {
      diag(&out, "DUPLICATE_LINK", "link " + l.id);
    }
    if (!nodes.count(l.u) || !nodes.count(l.v)) {
      diag(&out, "UNKNOWN_NODE", "link " + l.id + " has an undeclared endpoint");
    }
    if (l.u == l.v) diag(&out, "SELF_LOOP", "link " + l.id);
    if (!(std::isfinite(l.capacity) && l.capacity > 0.0)) {
      diag(&out, "NONPOSITIVE_CAPACITY", "link " + l.id);
    }
    if (l.fail_prob && !(prob_ok(*l.fail_prob) && *l.fail_prob < 1.0)) {
      diag(&out, "BAD_FAIL_PROB", "link " + l.id);
    }
  }

  std::set<std::string> tunnel_ids;
  for (const Tunnel& t : inst.tunnels) {
    if (!tunnel_ids.insert(t.id).second) {
      diag(&out, "DUPLICATE_TUNNEL", "tunnel " + t.id);
    }
    if (!nodes.count(t.src) || !nodes.count(t.dst)) {
      diag(&out, "UNKNOWN_NODE", "tunnel " + t.id + " endpoint");
      continue;
    }
    if (t.src == t.dst) diag(&out, "SAME_ENDPOINTS", "tunnel " + t.id);
    if (t.path.empty()) {
      diag(&out, "EMPTY_PATH", "tunnel " + t.id);
      continue;
    }
    std::set<std::string> seen;
    std::string at = t.src;
    bool broken = false;
    for (const std::string& lid : t.path) {
      auto it = links.find(lid);
      if (it == links.end()) {
        diag(&out, "UNKNOWN_LINK", "tunnel " + t.id + " uses " + lid);
        broken = true;
        break;
      }
      if (!seen.insert(lid).second) {
        diag(&out, "REPEATED_LINK", "tunnel " + t.id + " repeats " + lid);
      }
      const Link& l = *it->second;
      if (l.u == at) {
        at = l.v;
      } else if (l.v == at) {
        at = l.u;
      } else {
        broken = true;
        diag(&out, "TUNNEL_DISCONTIGUOUS",
             "tunnel " + t.id + " breaks at link " + lid);
        break;
      }
    }
    if (!broken && at != t.dst) {
      diag(&out, "TUNNEL_DISCONTIGUOUS", "tunnel " + t.id + " ends at " + at);
    }
  }

  std::set<std::string> cond_ids;
  for (const Condition& c : inst.conditions) {
    if (c.id.empty()) diag(&out, "EMPTY_ID", "condition with empty id");
    if (!cond_ids.insert(c.id).second) {
      diag(&out, "DUPLICATE_CONDITION", "condition " + c.id);
    }
    std::set<std::string> alive(c.alive_links.begin(), c.alive_links.end());
    for (const std::string& lid : c.alive_links) {
      if (!links.count(lid)) {
        diag(&out, "UNKNOWN_LINK", "condition " + c.id + " uses " + lid);
      }
    }
    for (const std::string& lid : c.dead_links) {
      if (!links.count(lid)) {
        diag(&out, "UNKNOWN_LINK", "condition " + c.id + " uses " + lid);
      }
      if (alive.count(lid)) {
        diag(&out, "CONDITION_CONFLICT",
             "condition " + c.id + " lists " + lid + " as alive and dead");
      }
    }
  }

  std::set<std::string> seq_ids;
  for (const LogicalSequence& q : inst.sequences) {
    if (!seq_ids.insert(q.id).second) {
      diag(&out, "DUPLICATE_SEQUENCE", "sequence " + q.id);
    }
    if (q.hops.size() < 2 || q.hops.front() != q.src || q.hops.back() != q.dst) {
      diag(&out, "SEQUENCE_ENDPOINTS", "sequence " + q.id);
    }
    for (size_t i = 0; i < q.hops.size(); ++i) {
      if (!nodes.count(q.hops[i])) {
        diag(&out, "UNKNOWN_NODE", "sequence " + q.id + " hop " + q.hops[i]);
      }
      if (i > 0 && q.hops[i] == q.hops[i - 1]) {
        diag(&out, "REPEATED_HOP", "sequence " + q.id);
      }
    }
    if (!q.condition.empty() && !cond_ids.count(q.condition)) {
      diag(&out, "UNKNOWN_CONDITION", "sequence " + q.id);
    }
  }

  std::set<std::string> flow_ids;
  for (const FlowDemand& f : inst.demands) {
    if (!f.flow_id.empty() && !flow_ids.insert(f.flow_id).second) {
      diag(&out, "DUPLICATE_FLOW", "flow " + f.flow_id);
    }
    if (!nodes.count(f.src) || !nodes.count(f.dst)) {
      diag(&out, "UNKNOWN_NODE", "flow " + f.flow_id + " endpoint");
    }
    if (f.src == f.dst) diag(&out, "SAME_ENDPOINTS", "flow " + f.flow_id);
    if (!(std::isfinite(f.demand) && f.demand >= 0.0)) {
      diag(&out, "NEGATIVE_DEMAND", "flow " + f.flow_id);
    }
    if (f.loss_threshold && !prob_ok(*f.loss_threshold)) {
      diag(&out, "BAD_THRESHOLD", "flow " + f.flow_id);
    }
    if (f.beta && !prob_ok(*f.beta)) diag(&out, "BAD_BETA", "flow " + f.flow_id);
  }

  for (const Scenario& s : inst.scenarios) {
    for (const std::string& lid : s.failed_links) {
      if (!links.count(lid)) diag(&out, "UNKNOWN_LINK", "scenario uses " + lid);
    }
    if (s.prob && !(prob_ok(*s.prob) && *s.prob > 0.0)) {
      diag(&out, "BAD_PROB", "scenario probability out of (0,1]");
    }
  }
  if (inst.beta && !prob_ok(*inst.beta)) diag(&out, "BAD_BETA", "global beta");
  if (inst.scenario_cutoff && !prob_ok(*inst.scenario_cutoff)) {
    diag(&out, "BAD_CUTOFF", "scenario cutoff out of [0,1]");
  }
  return out;
}

Network::Network(NetworkInstance instance) : inst_(std::move(instance)) {
  std::vector<Diagnostic> diags = validate_instance(inst_);
  if (!diags.empty()) {
    std::string msg = "invalid instance:";
    for (const Diagnostic& d : diags) msg += " [" + d.code + "] " + d.message + ";";
    throw Error(ErrorCode::kInvalidInstance, msg);
  }
  for (int v = 0; v < num_nodes(); ++v) node_idx_[inst_.nodes[v]] = v;
  incident_.assign(num_nodes(), {});
  for (int e = 0; e < num_links(); ++e) {
    const Link& l = inst_.links[e];
    link_idx_[l.id] = e;
    link_ends_.push_back({node_idx_[l.u], node_idx_[l.v]});
    incident_[link_ends_[e].src].push_back(e);
    incident_[link_ends_[e].dst].push_back(e);
  }
  for (int c = 0; c < num_conditions(); ++c) {
    const Condition& cd = inst_.conditions[c];
    cond_idx_[cd.id] = c;
    std::vector<int> alive, dead;
    for (const auto& id : cd.alive_links) alive.push_back(link_idx_[id]);
    for (const auto& id : cd.dead_links) dead.push_back(link_idx_[id]);
    std::sort(alive.begin(), alive.end());
    alive.erase(std::unique(alive.begin(), alive.end()), alive.end());
    std::sort(dead.begin(), dead.end());
    dead.erase(std::unique(dead.begin(), dead.end()), dead.end());
    cond_alive_.push_back(std::move(alive));
    cond_dead_.push_back(std::move(dead));
  }
  for (int l = 0; l < num_tunnels(); ++l) {
    const Tunnel& t = inst_.tunnels[l];
    tunnel_idx_[t.id] = l;
    NodePair p{node_idx_[t.src], node_idx_[t.dst]};
    tunnel_pair_.push_back(p);
    std::vector<int> path, nodes{p.src};
    for (const auto& id : t.path) {
      const int e = link_idx_[id];
      path.push_back(e);
      const int at = nodes.back();
      nodes.push_back(link_ends_[e].src == at ? link_ends_[e].dst
                                              : link_ends_[e].src);
    }
    tunnel_links_.push_back(std::move(path));
    tunnel_nodes_.push_back(std::move(nodes));
    tunnels_by_pair_[p].push_back(l);
  }
  for (int q = 0; q < num_sequences(); ++q) {
    const LogicalSequence& s = inst_.sequences[q];
    seq_idx_[s.id] = q;
    NodePair p{node_idx_[s.src], node_idx_[s.dst]};
    seq_pair_.push_back(p);
    std::vector<int> hops;
    for (const auto& h : s.hops) hops.push_back(node_idx_[h]);
    seq_hops_.push_back(std::move(hops));
    seq_cond_.push_back(s.condition.empty() ? -1 : cond_idx_[s.condition]);
    seqs_by_pair_[p].push_back(q);
  }
  for (const FlowDemand& f : inst_.demands) {
    NodePair p{node_idx_[f.src], node_idx_[f.dst]};
    flow_pair_.push_back(p);
    demand_by_pair_[p] += f.demand;
  }
  links_by_id_.resize(num_links());
  for (int e = 0; e < num_links(); ++e) links_by_id_[e] = e;
  std::sort(links_by_id_.begin(), links_by_id_.end(), [this](int a, int b) {
    return inst_.links[a].id < inst_.links[b].id;
  });
}

namespace {

int lookup(const std::unordered_map<std::string, int>& m, std::string_view id,
           const char* what) {
  auto it = m.find(std::string(id));
  if (it == m.end()) {
    throw Error(ErrorCode::kUnknownId,
                std::string("unknown ") + what + " id '" + std::string(id) + "'");
  }
  return it->second;
}

}  // namespace

int Network::node(std::string_view id) const { return lookup(node_idx_, id, "node"); }
int Network::link(std::string_view id) const { return lookup(link_idx_, id, "link"); }
int Network::tunnel(std::string_view id) const {
  return lookup(tunnel_idx_, id, "tunnel");
}
int Network::sequence(std::string_view id) const {
  return lookup(seq_idx_, id, "sequence");
}
int Network::condition(std::string_view id) const {
  return lookup(cond_idx_, id, "condition");
}

std::vector<NodePair> Network::sequence_segments(int q) const {
  std::vector<NodePair> out;
  const std::vector<int>& h = seq_hops_[q];
  for (size_t i = 0; i + 1 < h.size(); ++i) out.push_back({h[i], h[i + 1]});
  return out;
}

const std::vector<int>& Network::tunnels_of(NodePair p) const {
  auto it = tunnels_by_pair_.find(p);
  return it == tunnels_by_pair_.end() ? empty_list() : it->second;
}

const std::vector<int>& Network::sequences_of(NodePair p) const {
  auto it = seqs_by_pair_.find(p);
  return it == seqs_by_pair_.end() ? empty_list() : it->second;
}

double Network::demand(NodePair p) const {
  auto it = demand_by_pair_.find(p);
  return it == demand_by_pair_.end() ? 0.0 : it->second;
}

std::vector<NodePair> Network::demand_pairs() const {
  std::vector<NodePair> out;
  for (const auto& [p, d] : demand_by_pair_) {
    if (d > 0.0) out.push_back(p);
  }
  return out;
}

std::vector<NodePair> Network::tunnel_pairs() const {
  std::vector<NodePair> out;
  for (const auto& [p, ts] : tunnels_by_pair_) out.push_back(p);
  return out;
}

LinkMask make_mask(const Network& net, const std::vector<int>& failed) {
  LinkMask m(net.num_links(), 0);
  for (int e : failed) m.at(e) = 1;
  return m;
}

std::vector<int> scenario_links(const Network& net, const Scenario& s) {
  std::vector<int> out;
  for (const auto& id : s.failed_links) out.push_back(net.link(id));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Scenario make_scenario(const Network& net, const std::vector<int>& failed) {
  Scenario s;
  for (int e : failed) s.failed_links.push_back(net.link_id(e));
  std::sort(s.failed_links.begin(), s.failed_links.end());
  return s;
}

bool tunnel_alive(const Network& net, int tunnel, const LinkMask& failed) {
  for (int e : net.tunnel_links(tunnel)) {
    if (failed[e]) return false;
  }
  return true;
}

bool condition_active(const Network& net, int c, const LinkMask& failed) {
  for (int e : net.condition_alive(c)) {
    if (failed[e]) return false;
  }
  for (int e : net.condition_dead(c)) {
    if (!failed[e]) return false;
  }
  return true;
}

bool sequence_active(const Network& net, int q, const LinkMask& failed) {
  const int c = net.sequence_condition(q);
  return c < 0 || condition_active(net, c, failed);
}

bool tunnel_alive(const Network& net, const Tunnel& tunnel,
                  const Scenario& scenario) {
  const LinkMask m = make_mask(net, scenario_links(net, scenario));
  for (const auto& id : tunnel.path) {
    if (m[net.link(id)]) return false;
  }
  return true;
}

bool condition_active(const Network& net, const Condition& cond,
                      const Scenario& scenario) {
  const LinkMask m = make_mask(net, scenario_links(net, scenario));
  for (const auto& id : cond.alive_links) {
    if (m[net.link(id)]) return false;
  }
  for (const auto& id : cond.dead_links) {
    if (!m[net.link(id)]) return false;
  }
  return true;
}

double count_failure_sets(int num_links, int k) {
  k = std::clamp(k, 0, num_links);
  double total = 0.0, c = 1.0;
  for (int i = 0; i <= k; ++i) {
    total += c;
    c = c * (num_links - i) / (i + 1);
  }
  return total;
}

std::vector<std::vector<int>> enumerate_failure_sets(const Network& net, int k,
                                                     double guard) {
  if (k < 0) throw Error(ErrorCode::kInvalidArgument, "negative failure budget");
  const int n = net.num_links();
  k = std::min(k, n);
  if (count_failure_sets(n, k) > guard) {
    throw Error(ErrorCode::kScenarioBlowup,
                "scenario count exceeds guard for k=" + std::to_string(k));
  }
  const std::vector<int>& order = net.links_by_id();
  std::vector<std::vector<int>> out;
  for (int size = 0; size <= k; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<int> s;
      for (int i : idx) s.push_back(order[i]);
      out.push_back(std::move(s));
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::vector<Scenario> enumerate_scenarios(const Network& net, int k) {
  std::vector<Scenario> out;
  for (const auto& s : enumerate_failure_sets(net, k, 1e300)) {
    Scenario sc;
    for (int e : s) sc.failed_links.push_back(net.link_id(e));
    out.push_back(std::move(sc));
  }
  return out;
}

}  // namespace rte
