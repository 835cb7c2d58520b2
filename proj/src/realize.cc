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

#include "rte/realize.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <set>

#include "rte/parallel.h"

namespace rte {
namespace {

constexpr double kTiny = 1e-12;

// LS whose reservation is usable in this scenario.
std::vector<char> usable_sequences(const Network& net, const ReservationPlan& plan,
                                   const LinkMask& failed) {
  std::vector<char> on(net.num_sequences(), 0);
  for (int q = 0; q < net.num_sequences(); ++q) {
    const double b = q < static_cast<int>(plan.sequence_res.size())
                         ? plan.sequence_res[q]
                         : 0.0;
    on[q] = b > kTiny && plan.sequence_active(net, q, failed);
  }
  return on;
}

double tunnel_res(const ReservationPlan& plan, int l) {
  return l < static_cast<int>(plan.tunnel_res.size()) ? plan.tunnel_res[l] : 0.0;
}

std::vector<int> failed_list(const LinkMask& failed) {
  std::vector<int> out;
  for (size_t e = 0; e < failed.size(); ++e) {
    if (failed[e]) out.push_back(static_cast<int>(e));
  }
  return out;
}

using PairGraph = std::map<NodePair, std::vector<NodePair>>;

// Postorder DFS so successors (segments) land before their users.
TopologicalOrder order_pairs(const std::vector<NodePair>& nodes, PairGraph adj) {
  for (auto& [p, succ] : adj) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  TopologicalOrder out;
  std::map<NodePair, int> color;
  std::function<void(NodePair)> visit = [&](NodePair p) {
    color[p] = 1;
    auto it = adj.find(p);
    if (it != adj.end()) {
      for (NodePair s : it->second) {
        if (color[s] == 0) {
          visit(s);
        } else if (color[s] == 1) {
          out.sorted = false;
        }
      }
    }
    color[p] = 2;
    out.order.push_back(p);
  };
  for (NodePair p : nodes) {
    if (color[p] == 0) visit(p);
  }
  if (out.sorted) return out;

  // Shortest cycle: BFS from each node back to itself.
  out.order.clear();
  for (NodePair start : nodes) {
    std::map<NodePair, NodePair> parent;
    std::deque<NodePair> queue;
    bool found = false;
    NodePair last{};
    auto push_succ = [&](NodePair from) {
      auto it = adj.find(from);
      if (it == adj.end()) return;
      for (NodePair s : it->second) {
        if (found) return;
        if (s == start) {
          found = true;
          last = from;
          return;
        }
        if (parent.count(s)) continue;
        parent[s] = from;
        queue.push_back(s);
      }
    };
    push_succ(start);
    while (!found && !queue.empty()) {
      const NodePair v = queue.front();
      queue.pop_front();
      push_succ(v);
    }
    if (!found) continue;
    std::vector<NodePair> cyc;
    for (NodePair v = last; v != start; v = parent.at(v)) cyc.push_back(v);
    cyc.push_back(start);
    std::reverse(cyc.begin(), cyc.end());
    if (out.cycle.empty() || cyc.size() < out.cycle.size()) out.cycle = cyc;
  }
  return out;
}

std::string cycle_text(const Network& net, const std::vector<NodePair>& cycle) {
  std::string s;
  for (NodePair p : cycle) s += net.pair_name(p) + " > ";
  if (!cycle.empty()) s += net.pair_name(cycle.front());
  return s;
}

// Tunnels forming a directed cycle of positive flow, or empty.
std::vector<int> find_cycle(const Network& net, const std::vector<double>& r,
                            const std::vector<std::vector<int>>& out_tunnels,
                            double tol) {
  std::vector<int> color(net.num_nodes(), 0);
  std::vector<int> stack_nodes, stack_tunnels, cycle;
  std::function<bool(int)> dfs = [&](int v) {
    color[v] = 1;
    stack_nodes.push_back(v);
    for (int l : out_tunnels[v]) {
      if (r[l] <= tol) continue;
      const int w = net.tunnel_pair(l).dst;
      if (color[w] == 1) {
        const auto pos = std::find(stack_nodes.begin(), stack_nodes.end(), w) -
                         stack_nodes.begin();
        cycle.assign(stack_tunnels.begin() + pos, stack_tunnels.end());
        cycle.push_back(l);
        return true;
      }
      if (color[w] == 0) {
        stack_tunnels.push_back(l);
        if (dfs(w)) return true;
        stack_tunnels.pop_back();
      }
    }
    stack_nodes.pop_back();
    color[v] = 2;
    return false;
  };
  for (int v = 0; v < net.num_nodes(); ++v) {
    if (color[v] == 0 && dfs(v)) return cycle;
  }
  return {};
}

}  // namespace

int ReservationMatrix::find(NodePair p) const {
  auto it = std::lower_bound(pairs.begin(), pairs.end(), p);
  if (it == pairs.end() || *it != p) return -1;
  return static_cast<int>(it - pairs.begin());
}

ReservationMatrix build_reservation_matrix(const Network& net,
                                           const ReservationPlan& plan,
                                           const LinkMask& failed) {
  const std::vector<char> on = usable_sequences(net, plan, failed);
  std::set<NodePair> interest;
  for (NodePair p : net.demand_pairs()) {
    if (plan.scale(p) * net.demand(p) > kTiny) interest.insert(p);
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (int q = 0; q < net.num_sequences(); ++q) {
      if (!on[q] || !interest.count(net.sequence_pair(q))) continue;
      for (NodePair seg : net.sequence_segments(q)) grew |= interest.insert(seg).second;
    }
  }

  ReservationMatrix mat;
  mat.pairs.assign(interest.begin(), interest.end());
  const size_t n = mat.pairs.size();
  mat.m.assign(n, std::vector<double>(n, 0.0));
  mat.demand.assign(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    const NodePair p = mat.pairs[i];
    double diag = 0.0;
    for (int l : net.tunnels_of(p)) {
      if (tunnel_alive(net, l, failed)) diag += tunnel_res(plan, l);
    }
    for (int q : net.sequences_of(p)) {
      if (on[q]) diag += plan.sequence_res[q];
    }
    mat.m[i][i] += diag;
    mat.demand[i] = plan.scale(p) * net.demand(p);
    if (mat.demand[i] > 0.0) {
      auto& dt = mat.demand_to[p.dst];
      dt.resize(n, 0.0);
      dt[i] = mat.demand[i];
    }
  }
  for (int q = 0; q < net.num_sequences(); ++q) {
    if (!on[q]) continue;
    const int col = mat.find(net.sequence_pair(q));
    if (col < 0) continue;
    for (NodePair seg : net.sequence_segments(q)) {
      mat.m[mat.find(seg)][col] -= plan.sequence_res[q];
    }
  }
  return mat;
}

void check_wcdd(const ReservationMatrix& mat, double tol) {
  const size_t n = mat.size();
  std::vector<char> reached(n, 0);
  std::deque<size_t> queue;
  for (size_t i = 0; i < n; ++i) {
    const double scale = std::max(1.0, std::abs(mat.m[i][i]));
    double sum = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (j != i && mat.m[i][j] > tol * scale) {
        throw Error(ErrorCode::kMatrixNotWcdd, "positive off-diagonal entry in row " +
                                                   std::to_string(i));
      }
      sum += mat.m[i][j];
    }
    if (sum < mat.demand[i] - tol * scale) {
      throw Error(ErrorCode::kMatrixNotWcdd,
                  "row " + std::to_string(i) + " sum " + std::to_string(sum) +
                      " is below its demand " + std::to_string(mat.demand[i]));
    }
    if (sum > tol * scale) {
      reached[i] = 1;
      queue.push_back(i);
    }
  }
  // Row i chains to j when m[i][j] != 0; walk the edges backwards.
  while (!queue.empty()) {
    const size_t j = queue.front();
    queue.pop_front();
    for (size_t i = 0; i < n; ++i) {
      if (!reached[i] && i != j && mat.m[i][j] != 0.0) {
        reached[i] = 1;
        queue.push_back(i);
      }
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (!reached[i]) {
      throw Error(ErrorCode::kMatrixNotWcdd,
                  "row " + std::to_string(i) + " has no chain to a strictly dominant row");
    }
  }
}

std::vector<double> solve_reservation_system(const ReservationMatrix& mat,
                                             const std::vector<double>& rhs,
                                             LinearSolver solver) {
  const size_t n = mat.size();
  if (rhs.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "right-hand side has the wrong size");
  }
  check_wcdd(mat);
  if (solver == LinearSolver::kJacobi) {
    std::vector<double> u(n, 0.0), next(n, 0.0);
    for (int it = 0; it < 1000000; ++it) {
      double delta = 0.0;
      for (size_t i = 0; i < n; ++i) {
        double s = rhs[i];
        for (size_t j = 0; j < n; ++j) {
          if (j != i) s -= mat.m[i][j] * u[j];
        }
        next[i] = s / mat.m[i][i];
        delta = std::max(delta, std::abs(next[i] - u[i]));
      }
      u.swap(next);
      if (delta <= 1e-14) return u;
    }
    throw Error(ErrorCode::kSolverStall, "Jacobi iteration did not converge");
  }

  std::vector<std::vector<double>> a = mat.m;
  std::vector<double> b = rhs;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    if (a[piv][c] == 0.0) {
      throw Error(ErrorCode::kMatrixNotWcdd, "reservation matrix is singular");
    }
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> u(n, 0.0);
  for (size_t i = n; i-- > 0;) {
    double s = b[i];
    for (size_t k = i + 1; k < n; ++k) s -= a[i][k] * u[k];
    u[i] = s / a[i][i];
  }
  return u;
}

std::vector<double> solve_reservation_system(const ReservationMatrix& mat,
                                             LinearSolver solver) {
  return solve_reservation_system(mat, mat.demand, solver);
}

std::vector<double> ScenarioRouting::tunnel_load(const Network& net) const {
  std::vector<double> out(net.num_tunnels(), 0.0);
  for (const auto& [t, r] : flow) {
    for (size_t l = 0; l < r.size() && l < out.size(); ++l) out[l] += r[l];
  }
  return out;
}

std::vector<double> ScenarioRouting::link_load(const Network& net) const {
  std::vector<double> out(net.num_links(), 0.0);
  const std::vector<double> load = tunnel_load(net);
  for (size_t l = 0; l < load.size(); ++l) {
    for (int e : net.tunnel_links(static_cast<int>(l))) out[e] += load[l];
  }
  return out;
}

void cancel_cycles(const Network& net, ScenarioRouting& routing, double tol) {
  std::vector<std::vector<int>> out_tunnels(net.num_nodes());
  for (int l = 0; l < net.num_tunnels(); ++l) {
    out_tunnels[net.tunnel_pair(l).src].push_back(l);
  }
  for (auto& [t, r] : routing.flow) {
    while (true) {
      const std::vector<int> cycle = find_cycle(net, r, out_tunnels, tol);
      if (cycle.empty()) break;
      double least = std::numeric_limits<double>::infinity();
      for (int l : cycle) least = std::min(least, r[l]);
      for (int l : cycle) {
        r[l] -= least;
        if (r[l] <= tol) r[l] = 0.0;
      }
    }
  }
}

ScenarioRouting extract_routing(const Network& net, const ReservationPlan& plan,
                                const LinkMask& failed, LinearSolver solver) {
  const ReservationMatrix mat = build_reservation_matrix(net, plan, failed);
  ScenarioRouting out;
  out.failed = failed_list(failed);
  std::vector<int> dests;
  for (const auto& [t, d] : mat.demand_to) {
    dests.push_back(t);
    out.flow[t].assign(net.num_tunnels(), 0.0);
  }
  parallel_for(dests.size(), [&](size_t k) {
    const int t = dests[k];
    const std::vector<double> u = solve_reservation_system(mat, mat.demand_to.at(t), solver);
    std::vector<double>& r = out.flow.at(t);
    for (size_t i = 0; i < mat.size(); ++i) {
      for (int l : net.tunnels_of(mat.pairs[i])) {
        if (tunnel_alive(net, l, failed)) r[l] = u[i] * tunnel_res(plan, l);
      }
    }
  });
  for (size_t i = 0; i < mat.size(); ++i) {
    if (mat.demand[i] > 0.0) out.delivered[mat.pairs[i]] = mat.demand[i];
  }
  cancel_cycles(net, out);
  return out;
}

TopologicalOrder check_topological_sort(const Network& net,
                                        const std::vector<int>& sequences,
                                        const LinkMask& failed) {
  PairGraph adj;
  std::set<NodePair> nodes;
  for (int q : sequences) {
    if (q < 0 || q >= net.num_sequences()) {
      throw Error(ErrorCode::kInvalidArgument, "sequence index out of range");
    }
    if (!sequence_active(net, q, failed)) continue;
    const NodePair p = net.sequence_pair(q);
    nodes.insert(p);
    for (NodePair seg : net.sequence_segments(q)) {
      adj[p].push_back(seg);
      nodes.insert(seg);
    }
  }
  return order_pairs({nodes.begin(), nodes.end()}, std::move(adj));
}

ScenarioRouting proportional_routing(const Network& net, const ReservationPlan& plan,
                                     const LinkMask& failed) {
  const ReservationMatrix mat = build_reservation_matrix(net, plan, failed);
  const std::vector<char> on = usable_sequences(net, plan, failed);
  PairGraph adj;
  for (int q = 0; q < net.num_sequences(); ++q) {
    if (!on[q] || mat.find(net.sequence_pair(q)) < 0) continue;
    for (NodePair seg : net.sequence_segments(q)) adj[net.sequence_pair(q)].push_back(seg);
  }
  const TopologicalOrder ord = order_pairs(mat.pairs, adj);
  if (!ord.sorted) {
    throw Error(ErrorCode::kNotTopologicallySorted,
                "LS cycle " + cycle_text(net, ord.cycle));
  }

  ScenarioRouting out;
  out.failed = failed_list(failed);
  for (const auto& [t, dt] : mat.demand_to) {
    std::vector<double> offered = dt;
    std::vector<double>& r = out.flow[t];
    r.assign(net.num_tunnels(), 0.0);
    for (auto it = ord.order.rbegin(); it != ord.order.rend(); ++it) {
      const int i = mat.find(*it);
      const double cap = mat.m[i][i];
      double u = 0.0;
      if (cap > 0.0) {
        u = offered[i] / cap;
      } else if (offered[i] > 1e-9) {
        throw Error(ErrorCode::kMatrixNotWcdd,
                    "no live reservation for " + net.pair_name(*it));
      }
      for (int l : net.tunnels_of(*it)) {
        if (tunnel_alive(net, l, failed)) r[l] = u * tunnel_res(plan, l);
      }
      for (int q : net.sequences_of(*it)) {
        if (!on[q]) continue;
        for (NodePair seg : net.sequence_segments(q)) {
          offered[mat.find(seg)] += u * plan.sequence_res[q];
        }
      }
    }
  }
  for (size_t i = 0; i < mat.size(); ++i) {
    if (mat.demand[i] > 0.0) out.delivered[mat.pairs[i]] = mat.demand[i];
  }
  cancel_cycles(net, out);
  return out;
}

std::vector<int> prune_ls(const Network& net, const std::vector<int>& sequences,
                          const std::vector<std::vector<int>>& scenarios) {
  std::vector<LinkMask> masks;
  for (const auto& s : scenarios) masks.push_back(make_mask(net, s));
  if (masks.empty()) masks.push_back(make_mask(net, {}));
  std::vector<int> kept;
  for (int q : sequences) {
    kept.push_back(q);
    for (const LinkMask& m : masks) {
      if (!check_topological_sort(net, kept, m).sorted) {
        kept.pop_back();
        break;
      }
    }
  }
  return kept;
}

std::vector<LogicalSequence> widest_path_decompose(const Network& net,
                                                   const LogicalFlowPlan& flows) {
  const int n = net.num_nodes();
  std::vector<LogicalSequence> out;
  for (const LogicalFlow& w : flows.flows) {
    if (w.reservation <= 1e-9) continue;
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& [seg, load] : w.load) {
      if (load > kTiny) adj[seg.src].push_back({seg.dst, load});
    }
    // Max-bottleneck labels, Dijkstra style.
    std::vector<double> width(n, 0.0);
    std::vector<char> done(n, 0);
    width[w.pair.src] = std::numeric_limits<double>::infinity();
    for (int round = 0; round < n; ++round) {
      int v = -1;
      for (int u = 0; u < n; ++u) {
        if (!done[u] && width[u] > 0.0 && (v < 0 || width[u] > width[v])) v = u;
      }
      if (v < 0) break;
      done[v] = 1;
      for (auto [u, load] : adj[v]) width[u] = std::max(width[u], std::min(width[v], load));
    }
    const double best = width[w.pair.dst];
    if (best <= 0.0) {
      throw Error(ErrorCode::kInternal, "logical flow " + net.pair_name(w.pair) +
                                            " has no path in its segment graph");
    }
    // Fewest hops over edges at least as wide as the best path, then the
    // smallest node id at each step.
    const double cut = best * (1.0 - 1e-9);
    std::vector<int> dist(n, -1);
    dist[w.pair.dst] = 0;
    std::deque<int> queue{w.pair.dst};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int u = 0; u < n; ++u) {
        if (dist[u] >= 0) continue;
        for (auto [x, load] : adj[u]) {
          if (x == v && load >= cut) {
            dist[u] = dist[v] + 1;
            queue.push_back(u);
            break;
          }
        }
      }
    }
    LogicalSequence ls;
    ls.src = net.node_id(w.pair.src);
    ls.dst = net.node_id(w.pair.dst);
    ls.id = "lf." + ls.src + "-" + ls.dst;
    if (w.condition >= 0) {
      ls.condition = net.instance().conditions[w.condition].id;
      ls.id += "." + ls.condition;
    }
    for (int v = w.pair.src; v != w.pair.dst;) {
      ls.hops.push_back(net.node_id(v));
      int next = -1;
      for (auto [x, load] : adj[v]) {
        if (load < cut || dist[x] != dist[v] - 1) continue;
        if (next < 0 || net.node_id(x) < net.node_id(next)) next = x;
      }
      v = next;
    }
    ls.hops.push_back(ls.dst);
    out.push_back(std::move(ls));
  }
  return out;
}

}  // namespace rte
