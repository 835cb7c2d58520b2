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

#include "rte/oracle.h"

#include <set>

#include "rte/lp.h"
#include "rte/parallel.h"

namespace rte {

McfResult solve_mcf(const Network& net, const std::vector<int>& failed,
                    ObjectiveKind objective) {
  const LinkMask dead = make_mask(net, failed);
  const auto pairs = net.demand_pairs();
  std::set<int> dests;
  for (NodePair p : pairs) dests.insert(p.dst);

  lp::LinearProgram lp;
  // arc[t][2e + dir]
  std::map<int, std::vector<int>> arc;
  for (int t : dests) {
    auto& v = arc[t];
    v.assign(2 * net.num_links(), -1);
    for (int e = 0; e < net.num_links(); ++e) {
      if (dead[e]) continue;
      v[2 * e] = lp.add_variable("f");
      v[2 * e + 1] = lp.add_variable("f");
    }
  }
  int z = -1;
  std::map<NodePair, int> g;
  if (objective == ObjectiveKind::kDemandScale) {
    z = lp.add_variable("z", 0.0, pairs.empty() ? 0.0 : lp::kInf);
  } else {
    for (NodePair p : pairs) g[p] = lp.add_variable("g", 0.0, net.demand(p));
  }
  for (int t : dests) {
    std::vector<lp::LinExpr> bal(net.num_nodes());
    for (int e = 0; e < net.num_links(); ++e) {
      if (dead[e]) continue;
      const int u = net.link_u(e), v = net.link_v(e);
      bal[u].add(arc[t][2 * e], 1.0).add(arc[t][2 * e + 1], -1.0);
      bal[v].add(arc[t][2 * e], -1.0).add(arc[t][2 * e + 1], 1.0);
    }
    for (int i = 0; i < net.num_nodes(); ++i) {
      if (i == t) continue;
      const NodePair p{i, t};
      const double d = net.demand(p);
      if (d > 0.0) {
        if (z >= 0) {
          bal[i].add(z, -d);
        } else {
          bal[i].add(g[p], -1.0);
        }
      }
      if (bal[i].terms.empty()) continue;
      lp.add_row(bal[i], lp::Sense::kEq, 0.0);
    }
  }
  for (int e = 0; e < net.num_links(); ++e) {
    if (dead[e] || dests.empty()) continue;
    lp::LinExpr cap;
    for (int t : dests) cap.add(arc[t][2 * e], 1.0).add(arc[t][2 * e + 1], 1.0);
    lp.add_row(cap, lp::Sense::kLe, net.capacity(e));
  }
  lp::LinExpr obj;
  if (z >= 0) {
    obj.add(z, 1.0);
  } else {
    for (const auto& [p, v] : g) obj.add(v, 1.0);
  }
  lp.set_objective(lp::ObjSense::kMax, obj);
  const lp::Solution sol = lp::solve_lp(lp);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kInternalModelError,
                std::string("flow model is ") + lp::status_name(sol.status));
  }

  McfResult out;
  out.failed = failed;
  out.objective = sol.objective;
  for (int t : dests) {
    auto& f = out.flow[t];
    f.assign(2 * net.num_links(), 0.0);
    for (size_t a = 0; a < f.size(); ++a) {
      if (arc[t][a] >= 0) f[a] = std::max(0.0, sol.x[arc[t][a]]);
    }
  }
  for (NodePair p : pairs) {
    const double d = net.demand(p);
    const double served = z >= 0 ? sol.x[z] * d : sol.x[g[p]];
    out.served[p] = served;
    out.satisfied[p] = served / d;
  }
  return out;
}

McfResult solve_mcf(const Network& net, const Scenario& scenario,
                    ObjectiveKind objective) {
  return solve_mcf(net, scenario_links(net, scenario), objective);
}

WorstCase worst_case_optimal(const Network& net, int k, ObjectiveKind objective,
                             double guard) {
  const auto sets = enumerate_failure_sets(net, k, guard);
  std::vector<double> values(sets.size());
  parallel_for(sets.size(), [&](size_t i) {
    values[i] = solve_mcf(net, sets[i], objective).objective;
  });
  WorstCase out;
  out.scenarios = sets.size();
  size_t best = 0;
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best] - 1e-9) best = i;
  }
  out.value = values[best];
  out.scenario = sets[best];
  return out;
}

NetworkInstance generalized_family(int p, int n, int m) {
  if (n < 2 || p < n || m < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "generalized family needs p >= n >= 2 and m >= 2");
  }
  NetworkInstance in;
  in.name = "generalized_" + std::to_string(p) + "_" + std::to_string(n) + "_" +
            std::to_string(m);
  for (int i = 0; i <= m; ++i) in.nodes.push_back("s" + std::to_string(i));
  // seg_links[j] holds the parallel links between s_j and s_{j+1}.
  std::vector<std::vector<std::string>> seg_links(m);
  for (int j = 0; j < m; ++j) {
    const int count = j == 0 ? p : n;
    for (int i = 1; i <= count; ++i) {
      Link l;
      l.id = in.nodes[j] + "-" + in.nodes[j + 1] + "." + std::to_string(i);
      l.u = in.nodes[j];
      l.v = in.nodes[j + 1];
      l.capacity = j == 0 ? 1.0 / p : 1.0;
      in.links.push_back(l);
      seg_links[j].push_back(l.id);
      in.tunnels.push_back({"t." + l.id, l.u, l.v, {l.id}});
    }
  }
  // All end-to-end paths, odometer style.
  std::vector<int> pick(m, 0);
  while (true) {
    Tunnel t{"P", in.nodes.front(), in.nodes.back(), {}};
    for (int j = 0; j < m; ++j) {
      t.path.push_back(seg_links[j][pick[j]]);
      t.id += "." + std::to_string(pick[j] + 1);
    }
    in.tunnels.push_back(std::move(t));
    int j = m - 1;
    while (j >= 0 && ++pick[j] == static_cast<int>(seg_links[j].size())) {
      pick[j--] = 0;
    }
    if (j < 0) break;
  }
  in.sequences.push_back({"L", in.nodes.front(), in.nodes.back(), in.nodes, ""});
  FlowDemand f;
  f.flow_id = "f";
  f.src = in.nodes.front();
  f.dst = in.nodes.back();
  f.demand = 1.0;
  in.demands.push_back(f);
  return in;
}

}  // namespace rte
