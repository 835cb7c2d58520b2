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

#include "testlib.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <set>

#include "rte/harness.h"

namespace rte::testing {
namespace {

std::string node_name(int v) { return "n" + std::to_string(v); }

// Random spanning tree plus extra chords; link ids "na-nb" with a suffix
// for parallel copies.
void random_topology(NetworkInstance& in, std::mt19937_64& rng, int n, int extra,
                     double cap_lo, double cap_hi) {
  std::uniform_real_distribution<double> cap(cap_lo, cap_hi);
  for (int v = 0; v < n; ++v) in.nodes.push_back(node_name(v));
  std::set<std::string> ids;
  auto add = [&](int a, int b) {
    if (a > b) std::swap(a, b);
    std::string id = node_name(a) + "-" + node_name(b);
    for (int i = 2; ids.count(id); ++i) {
      id = node_name(a) + "-" + node_name(b) + "." + std::to_string(i);
    }
    ids.insert(id);
    Link l;
    l.id = id;
    l.u = node_name(a);
    l.v = node_name(b);
    // Quarter steps keep LP data well scaled.
    l.capacity = std::round(cap(rng) * 4.0) / 4.0;
    in.links.push_back(l);
  };
  for (int v = 1; v < n; ++v) {
    add(std::uniform_int_distribution<int>(0, v - 1)(rng), v);
  }
  for (int i = 0; i < extra; ++i) {
    const int a = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int b = std::uniform_int_distribution<int>(0, n - 2)(rng);
    if (b >= a) ++b;
    add(a, b);
  }
}

FlowDemand make_flow(const std::string& s, const std::string& t, double d) {
  FlowDemand f;
  f.flow_id = s + "-" + t;
  f.src = s;
  f.dst = t;
  f.demand = d;
  return f;
}

}  // namespace

NetworkInstance random_instance(uint64_t seed, const RandomSpec& spec) {
  std::mt19937_64 rng(seed);
  NetworkInstance in;
  in.name = "random_" + std::to_string(seed);
  const int n = std::uniform_int_distribution<int>(spec.min_nodes, spec.max_nodes)(rng);
  random_topology(in, rng, n, spec.extra_links, 0.5, 2.0);

  const int nd = std::uniform_int_distribution<int>(1, spec.max_demands)(rng);
  std::set<std::pair<int, int>> pairs;
  while (static_cast<int>(pairs.size()) < nd) {
    const int s = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int t = std::uniform_int_distribution<int>(0, n - 2)(rng);
    if (t >= s) ++t;
    pairs.insert({s, t});
  }
  std::uniform_real_distribution<double> dem(0.5, 2.0);
  for (auto [s, t] : pairs) {
    in.demands.push_back(make_flow(node_name(s), node_name(t), std::round(dem(rng) * 4) / 4));
  }

  if (spec.with_sequences) {
    std::bernoulli_distribution coin(0.7);
    bool first = true;
    for (auto [s, t] : pairs) {
      if (n < 3 || !(first || coin(rng))) continue;
      first = false;
      int m;
      do {
        m = std::uniform_int_distribution<int>(0, n - 1)(rng);
      } while (m == s || m == t);
      const std::string id = "L." + node_name(s) + "." + node_name(t);
      const std::vector<std::string> hops = {node_name(s), node_name(m), node_name(t)};
      in.sequences.push_back({id, node_name(s), node_name(t), hops, ""});
      // Conditional copy: usable while a link at the relay is alive.
      const std::string anchor = in.links[std::uniform_int_distribution<size_t>(
                                               0, in.links.size() - 1)(rng)].id;
      const std::string cid = "c." + id;
      in.conditions.push_back({cid, {anchor}, {}});
      in.sequences.push_back({id + ".c", node_name(s), node_name(t), hops, cid});
    }
  }
  return with_selected_tunnels(in, spec.tunnels_per_pair);
}

NetworkInstance random_prob_instance(uint64_t seed, int max_nodes, int max_scenarios,
                                     int max_flows) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  NetworkInstance in;
  in.name = "random_prob_" + std::to_string(seed);
  const int n = std::uniform_int_distribution<int>(3, std::max(3, max_nodes))(rng);
  random_topology(in, rng, n, 2, 0.75, 2.0);
  for (Link& l : in.links) l.fail_prob = 0.01;

  const int nf = std::uniform_int_distribution<int>(1, max_flows)(rng);
  std::set<std::pair<int, int>> pairs;
  for (int tries = 0; static_cast<int>(pairs.size()) < nf && tries < 100; ++tries) {
    const int s = std::uniform_int_distribution<int>(0, n - 1)(rng);
    int t = std::uniform_int_distribution<int>(0, n - 2)(rng);
    if (t >= s) ++t;
    pairs.insert({s, t});
  }
  std::uniform_real_distribution<double> dem(0.5, 1.5);
  for (auto [s, t] : pairs) {
    in.demands.push_back(make_flow(node_name(s), node_name(t), std::round(dem(rng) * 4) / 4));
  }
  in = with_selected_tunnels(in, 2);

  // Explicit scenarios: no failure with most of the mass, then distinct
  // one- and two-link failures.
  const int nq = std::uniform_int_distribution<int>(2, std::max(2, max_scenarios))(rng);
  std::set<std::vector<std::string>> seen{{}};
  in.scenarios.push_back({{}, 0.0});
  const int nl = static_cast<int>(in.links.size());
  for (int tries = 0; static_cast<int>(in.scenarios.size()) < nq && tries < 200; ++tries) {
    std::vector<std::string> failed = {
        in.links[std::uniform_int_distribution<int>(0, nl - 1)(rng)].id};
    if (nl > 1 && std::bernoulli_distribution(0.3)(rng)) {
      const std::string other = in.links[std::uniform_int_distribution<int>(0, nl - 1)(rng)].id;
      if (other != failed[0]) failed.push_back(other);
    }
    std::sort(failed.begin(), failed.end());
    if (seen.insert(failed).second) in.scenarios.push_back({failed, 0.0});
  }
  const double p0 = std::uniform_real_distribution<double>(0.8, 0.9)(rng);
  std::vector<double> w(in.scenarios.size() - 1);
  double total = 0.0;
  for (double& x : w) total += (x = std::uniform_real_distribution<double>(0.1, 1.0)(rng));
  in.scenarios[0].prob = p0;
  for (size_t i = 1; i < in.scenarios.size(); ++i) {
    in.scenarios[i].prob = (1.0 - p0) * w[i - 1] / total;
  }
  if (in.scenarios.size() == 1) in.scenarios[0].prob = 1.0;
  // Target 0.9 when every flow can meet it, else 0.8 which the no-failure
  // scenario alone covers.
  in.beta = 0.9;
  const Network net(in);
  for (int f = 0; f < net.num_flows(); ++f) {
    const NodePair p = net.flow_pair(f);
    double mass = 0.0;
    for (const Scenario& sc : in.scenarios) {
      const LinkMask mask = make_mask(net, scenario_links(net, sc));
      for (int l : net.tunnels_of(p)) {
        if (tunnel_alive(net, l, mask)) {
          mass += *sc.prob;
          break;
        }
      }
    }
    if (mass < 0.9 - 1e-9) in.beta = 0.8;
  }
  return in;
}

bool add_random_tunnel(NetworkInstance& in, uint64_t seed) {
  std::mt19937_64 rng(seed);
  if (in.demands.empty()) return false;
  const FlowDemand& f =
      in.demands[std::uniform_int_distribution<size_t>(0, in.demands.size() - 1)(rng)];
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> adj;
  for (const Link& l : in.links) {
    adj[l.u].push_back({l.v, l.id});
    adj[l.v].push_back({l.u, l.id});
  }
  std::set<std::vector<std::string>> existing;
  for (const Tunnel& t : in.tunnels) {
    if (t.src == f.src && t.dst == f.dst) existing.insert(t.path);
  }
  std::vector<std::vector<std::string>> fresh;
  std::set<std::string> on_path{f.src};
  std::vector<std::string> path;
  std::function<void(const std::string&)> dfs = [&](const std::string& v) {
    if (fresh.size() > 200) return;
    if (v == f.dst) {
      if (!existing.count(path)) fresh.push_back(path);
      return;
    }
    for (const auto& [w, id] : adj[v]) {
      if (on_path.count(w)) continue;
      on_path.insert(w);
      path.push_back(id);
      dfs(w);
      path.pop_back();
      on_path.erase(w);
    }
  };
  dfs(f.src);
  if (fresh.empty()) return false;
  Tunnel t;
  t.id = "extra." + std::to_string(in.tunnels.size());
  t.src = f.src;
  t.dst = f.dst;
  t.path = fresh[std::uniform_int_distribution<size_t>(0, fresh.size() - 1)(rng)];
  in.tunnels.push_back(t);
  return true;
}

double max_flow(const Network& net, int s, int t, const std::vector<int>& failed) {
  const int n = net.num_nodes();
  std::vector<std::vector<double>> cap(n, std::vector<double>(n, 0.0));
  std::set<int> dead(failed.begin(), failed.end());
  for (int e = 0; e < net.num_links(); ++e) {
    if (dead.count(e)) continue;
    cap[net.link_u(e)][net.link_v(e)] += net.capacity(e);
    cap[net.link_v(e)][net.link_u(e)] += net.capacity(e);
  }
  double total = 0.0;
  while (true) {
    std::vector<int> parent(n, -1);
    parent[s] = s;
    std::deque<int> queue{s};
    while (!queue.empty() && parent[t] < 0) {
      const int v = queue.front();
      queue.pop_front();
      for (int w = 0; w < n; ++w) {
        if (parent[w] < 0 && cap[v][w] > 1e-12) {
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
    if (parent[t] < 0) return total;
    double push = std::numeric_limits<double>::infinity();
    for (int v = t; v != s; v = parent[v]) push = std::min(push, cap[parent[v]][v]);
    for (int v = t; v != s; v = parent[v]) {
      cap[parent[v]][v] -= push;
      cap[v][parent[v]] += push;
    }
    total += push;
  }
}

double single_demand_oracle(const Network& net, int k) {
  const NodePair p = net.demand_pairs().at(0);
  const double d = net.demand(p);
  double worst = d;
  for (const std::vector<int>& failed : enumerate_failure_sets(net, k)) {
    worst = std::min(worst, max_flow(net, p.src, p.dst, failed));
  }
  return worst;
}

std::vector<double> dense_solve(const ReservationMatrix& m, const std::vector<double>& rhs) {
  const int n = static_cast<int>(m.size());
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = m.m[i][j];
    b(i) = rhs[i];
  }
  const Eigen::VectorXd x = a.fullPivLu().solve(b);
  return std::vector<double>(x.data(), x.data() + n);
}

double flow_balance_error(const Network& net, const ScenarioRouting& r) {
  double worst = 0.0;
  for (const auto& [t, flow] : r.flow) {
    std::vector<double> net_out(net.num_nodes(), 0.0);
    for (int l = 0; l < net.num_tunnels(); ++l) {
      const NodePair p = net.tunnel_pair(l);
      net_out[p.src] += flow[l];
      net_out[p.dst] -= flow[l];
    }
    double into_t = 0.0;
    for (int v = 0; v < net.num_nodes(); ++v) {
      if (v == t) continue;
      auto it = r.delivered.find({v, t});
      const double d = it == r.delivered.end() ? 0.0 : it->second;
      into_t += d;
      worst = std::max(worst, std::abs(net_out[v] - d));
    }
    worst = std::max(worst, std::abs(net_out[t] + into_t));
  }
  return worst;
}

double sorted_percentile(const std::vector<double>& v, const std::vector<double>& p,
                         double beta) {
  std::vector<size_t> idx(v.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return v[a] < v[b]; });
  double mass = 0.0;
  for (size_t i : idx) {
    mass += p[i];
    if (mass >= beta - 1e-9) return v[i];
  }
  return std::numeric_limits<double>::infinity();
}

double sorted_cvar(const std::vector<double>& v, const std::vector<double>& p, double beta) {
  const double var = sorted_percentile(v, p, beta);
  double below = 0.0, tail = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] <= var) {
      below += p[i];
    } else {
      tail += p[i] * v[i];
    }
  }
  return (tail + (below - beta) * var) / (1.0 - beta);
}

RobustOptions options(Model m, int k, ObjectiveKind obj, Mode mode) {
  RobustOptions o;
  o.model = m;
  o.failure.k = k;
  o.objective = obj;
  o.mode = mode;
  return o;
}

}  // namespace rte::testing
