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

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "rte/harness.h"
#include "rte/oracle.h"

namespace rte {
namespace {

// Adjacency over the topology's links, neighbours sorted by node id then
// link id so every search below is deterministic.
struct Graph {
  std::vector<std::string> names;
  std::map<std::string, int> idx;
  struct Arc {
    int to;
    int link;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<std::string> link_ids;

  explicit Graph(const NetworkInstance& in) {
    names = in.nodes;
    for (size_t v = 0; v < names.size(); ++v) idx[names[v]] = static_cast<int>(v);
    adj.resize(names.size());
    for (size_t e = 0; e < in.links.size(); ++e) {
      const Link& l = in.links[e];
      auto u = idx.find(l.u), v = idx.find(l.v);
      if (u == idx.end() || v == idx.end()) {
        throw Error(ErrorCode::kUnknownId, "link " + l.id + " names an unknown node");
      }
      adj[u->second].push_back({v->second, static_cast<int>(e)});
      adj[v->second].push_back({u->second, static_cast<int>(e)});
      link_ids.push_back(l.id);
    }
    for (auto& arcs : adj) {
      std::sort(arcs.begin(), arcs.end(), [&](const Arc& a, const Arc& b) {
        if (names[a.to] != names[b.to]) return names[a.to] < names[b.to];
        return link_ids[a.link] < link_ids[b.link];
      });
    }
  }

  int node(const std::string& id) const {
    auto it = idx.find(id);
    if (it == idx.end()) throw Error(ErrorCode::kUnknownId, "unknown node " + id);
    return it->second;
  }
};

struct Path {
  std::vector<int> nodes;
  std::vector<int> links;
};

// Fewest hops avoiding `blocked` links; the first arc in sorted order wins
// at every step.
std::optional<Path> shortest_path(const Graph& g, int s, int t,
                                  const std::vector<char>& blocked) {
  std::vector<int> dist(g.names.size(), -1);
  dist[t] = 0;
  std::deque<int> queue{t};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (const Graph::Arc& a : g.adj[v]) {
      if (blocked[a.link] || dist[a.to] >= 0) continue;
      dist[a.to] = dist[v] + 1;
      queue.push_back(a.to);
    }
  }
  if (dist[s] < 0) return std::nullopt;
  Path p;
  p.nodes.push_back(s);
  for (int v = s; v != t;) {
    for (const Graph::Arc& a : g.adj[v]) {
      if (!blocked[a.link] && dist[a.to] == dist[v] - 1) {
        p.links.push_back(a.link);
        p.nodes.push_back(a.to);
        v = a.to;
        break;
      }
    }
  }
  return p;
}

// Simple path minimizing (links shared with `use`, hops, node ids) that is
// not in `taken`; depth-first with bound pruning.
std::optional<Path> least_overlap_path(const Graph& g, int s, int t,
                                       const std::vector<int>& use,
                                       const std::set<std::vector<int>>& taken) {
  using Cost = std::pair<int, int>;
  std::optional<Path> best;
  Cost best_cost{INT32_MAX, INT32_MAX};
  std::vector<char> on_path(g.names.size(), 0);
  Path cur;
  cur.nodes.push_back(s);
  on_path[s] = 1;
  long budget = 2000000;
  std::function<void(int, Cost)> dfs = [&](int v, Cost c) {
    if (--budget < 0 || c > best_cost) return;
    if (v == t) {
      if (taken.count(cur.links)) return;
      // Arcs are explored in lexicographic order, so ties keep the first.
      if (c < best_cost) {
        best_cost = c;
        best = cur;
      }
      return;
    }
    for (const Graph::Arc& a : g.adj[v]) {
      if (on_path[a.to]) continue;
      on_path[a.to] = 1;
      cur.nodes.push_back(a.to);
      cur.links.push_back(a.link);
      dfs(a.to, {c.first + use[a.link], c.second + 1});
      cur.links.pop_back();
      cur.nodes.pop_back();
      on_path[a.to] = 0;
    }
  };
  dfs(s, {0, 0});
  return best;
}

}  // namespace

std::vector<FlowDemand> generate_gravity_demands(const NetworkInstance& topology,
                                                 double mlu_lo, double mlu_hi,
                                                 uint64_t seed) {
  if (!(mlu_lo > 0.0) || mlu_hi < mlu_lo) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 < mlu_lo <= mlu_hi");
  }
  const Graph g(topology);
  const int n = static_cast<int>(g.names.size());
  {
    std::vector<char> none(g.link_ids.size(), 0);
    for (int v = 1; v < n; ++v) {
      if (!shortest_path(g, 0, v, none)) {
        throw Error(ErrorCode::kInvalidArgument, "topology is disconnected");
      }
    }
  }
  NetworkInstance unit = topology;
  unit.tunnels.clear();
  unit.sequences.clear();
  unit.conditions.clear();
  unit.scenarios.clear();
  unit.demands.clear();
  double total_w = 0.0;
  for (int v = 0; v < n; ++v) total_w += static_cast<double>(g.adj[v].size());
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t) continue;
      FlowDemand f;
      f.flow_id = g.names[s] + "-" + g.names[t];
      f.src = g.names[s];
      f.dst = g.names[t];
      f.demand = static_cast<double>(g.adj[s].size()) * g.adj[t].size() / total_w;
      unit.demands.push_back(f);
    }
  }
  // MLU of the unit matrix is 1 / z0, so scaling by m * z0 lands on m.
  const double z0 = solve_mcf(Network(unit), std::vector<int>{}, ObjectiveKind::kDemandScale)
                        .objective;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pick(mlu_lo, mlu_hi);
  const double target = mlu_hi > mlu_lo ? pick(rng) : mlu_lo;
  for (FlowDemand& f : unit.demands) f.demand *= target * z0;
  return unit.demands;
}

std::vector<Tunnel> select_tunnels(const NetworkInstance& topology, const std::string& src,
                                   const std::string& dst, int count) {
  const Graph g(topology);
  const int s = g.node(src), t = g.node(dst);
  std::vector<Tunnel> out;
  if (s == t || count <= 0) return out;
  std::vector<char> used(g.link_ids.size(), 0);
  std::vector<int> use(g.link_ids.size(), 0);
  std::set<std::vector<int>> taken;
  auto emit = [&](const Path& p) {
    Tunnel tn;
    tn.id = src + "-" + dst + "-" + std::to_string(out.size() + 1);
    tn.src = src;
    tn.dst = dst;
    for (int e : p.links) {
      tn.path.push_back(g.link_ids[e]);
      used[e] = 1;
      ++use[e];
    }
    taken.insert(p.links);
    out.push_back(std::move(tn));
  };
  while (static_cast<int>(out.size()) < count) {
    auto p = shortest_path(g, s, t, used);
    if (!p) break;
    emit(*p);
  }
  while (static_cast<int>(out.size()) < count) {
    auto p = least_overlap_path(g, s, t, use, taken);
    if (!p) break;
    emit(*p);
  }
  return out;
}

NetworkInstance with_selected_tunnels(const NetworkInstance& instance, int count) {
  NetworkInstance out = instance;
  out.tunnels.clear();
  std::set<std::pair<std::string, std::string>> pairs;
  for (const FlowDemand& f : instance.demands) pairs.insert({f.src, f.dst});
  for (const LogicalSequence& q : instance.sequences) {
    for (size_t i = 0; i + 1 < q.hops.size(); ++i) pairs.insert({q.hops[i], q.hops[i + 1]});
  }
  for (const auto& [s, t] : pairs) {
    for (Tunnel& tn : select_tunnels(instance, s, t, count)) out.tunnels.push_back(std::move(tn));
  }
  return out;
}

NetworkInstance split_sublinks(const NetworkInstance& instance) {
  NetworkInstance out = instance;
  out.links.clear();
  for (const Link& l : instance.links) {
    Link a = l, b = l;
    a.id = l.id + ".a";
    b.id = l.id + ".b";
    a.capacity = b.capacity = l.capacity / 2.0;
    out.links.push_back(a);
    out.links.push_back(b);
  }
  auto rename = [](std::vector<std::string>& ids) {
    for (std::string& id : ids) id += ".a";
  };
  for (Tunnel& t : out.tunnels) rename(t.path);
  for (Condition& c : out.conditions) {
    rename(c.alive_links);
    rename(c.dead_links);
  }
  for (Scenario& s : out.scenarios) rename(s.failed_links);
  return out;
}

}  // namespace rte
