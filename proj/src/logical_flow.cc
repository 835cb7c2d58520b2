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

// Logical flows: the reservation b_w of flow w = ((s,t), c) is carried by an
// arbitrary flow p_w over logical segments instead of a fixed hop list.
// Flows start from every demand pair and every LS endpoint pair, once per
// condition plus once unconditionally.

#include <algorithm>
#include <set>

#include "robust_internal.h"

namespace rte {

LogicalFlowResult solve_logical_flow(const Network& net,
                                     const LogicalFlowOptions& opts) {
  if (opts.failure.k < 0 || opts.failure.k_groups < 0) {
    throw Error(ErrorCode::kInvalidArgument, "failure budget must be >= 0");
  }
  std::vector<int> conds;
  if (opts.conditions) {
    conds = *opts.conditions;
    for (int c : conds) {
      if (c < 0 || c >= net.num_conditions()) {
        throw Error(ErrorCode::kInvalidArgument, "condition index out of range");
      }
    }
    std::sort(conds.begin(), conds.end());
    conds.erase(std::unique(conds.begin(), conds.end()), conds.end());
  } else {
    for (int c = 0; c < net.num_conditions(); ++c) conds.push_back(c);
  }

  std::set<NodePair> flow_pairs;
  if (opts.allow_flows) {
    for (NodePair p : net.demand_pairs()) flow_pairs.insert(p);
    for (int q = 0; q < net.num_sequences(); ++q) flow_pairs.insert(net.sequence_pair(q));
  }
  std::set<NodePair> rows;
  for (NodePair p : net.demand_pairs()) rows.insert(p);
  if (!flow_pairs.empty()) {
    rows.insert(flow_pairs.begin(), flow_pairs.end());
    for (NodePair p : net.tunnel_pairs()) rows.insert(p);
  }

  lp::LinearProgram lp;
  std::vector<int> a_var(net.num_tunnels(), -1);
  for (NodePair p : rows) {
    for (int l : net.tunnels_of(p)) {
      a_var[l] = lp.add_variable("a." + net.instance().tunnels[l].id);
    }
  }
  detail::ObjectiveBuilder objective(lp, net, opts.objective);
  detail::add_capacity_rows(lp, net, a_var);

  struct FlowVars {
    NodePair pair;
    int condition;
    int b;
    std::map<NodePair, int> p;
  };
  std::vector<FlowVars> flows;
  std::vector<int> cond_list = {-1};
  cond_list.insert(cond_list.end(), conds.begin(), conds.end());
  for (NodePair fp : flow_pairs) {
    for (int c : cond_list) {
      FlowVars w{fp, c, -1, {}};
      const std::string nm =
          net.pair_name(fp) + (c < 0 ? "" : "|" + net.instance().conditions[c].id);
      w.b = lp.add_variable("bw." + nm);
      // Segments into s or out of t only create circulations.
      for (NodePair seg : rows) {
        if (seg == fp || seg.src == fp.dst || seg.dst == fp.src) continue;
        w.p[seg] = lp.add_variable("p." + nm + "." + net.pair_name(seg));
      }
      std::vector<lp::LinExpr> balance(net.num_nodes());
      for (const auto& [seg, v] : w.p) {
        balance[seg.src].add(v, 1.0);
        balance[seg.dst].add(v, -1.0);
      }
      balance[fp.src].add(w.b, -1.0);
      balance[fp.dst].add(w.b, 1.0);
      for (int v = 0; v < net.num_nodes(); ++v) {
        if (balance[v].terms.empty()) continue;
        lp.add_row(balance[v], lp::Sense::kEq, 0.0,
                   "bal." + nm + "." + net.node_id(v));
      }
      flows.push_back(std::move(w));
    }
  }

  for (NodePair p : rows) {
    const std::vector<int>& tunnels = net.tunnels_of(p);
    ProtectedRow row;
    row.name = "prot." + net.pair_name(p);
    for (int l : tunnels) row.guaranteed.add(a_var[l], 1.0);
    objective.subtract_demand(row.guaranteed, p);
    std::map<int, lp::LinExpr> cond_loss;
    for (const FlowVars& w : flows) {
      if (w.pair == p) {
        if (w.condition < 0) {
          row.guaranteed.add(w.b, 1.0);
        } else {
          cond_loss[w.condition].add(w.b, -1.0);
        }
      }
      auto it = w.p.find(p);
      if (it == w.p.end()) continue;
      if (w.condition < 0) {
        row.guaranteed.add(it->second, -1.0);
      } else {
        cond_loss[w.condition].add(it->second, 1.0);
      }
    }
    std::vector<int> conditions;
    for (int l : tunnels) row.loss.push_back(lp::LinExpr().add(a_var[l], 1.0));
    for (auto& [c, e] : cond_loss) {
      conditions.push_back(c);
      row.loss.push_back(e);
    }
    detail::emit_protected(lp, net, row, PolytopeKind::kHint, opts.failure,
                           tunnels, conditions, opts.mode, opts.pattern_guard);
  }
  objective.set_objective();

  const lp::Solution sol = detail::solve_or_throw(lp, opts.lp, "logical flow");
  LogicalFlowResult out;
  ReservationPlan& plan = out.plan;
  plan.model = Model::kLogicalFlow;
  plan.mode = opts.mode;
  plan.objective = opts.objective;
  plan.failure = opts.failure;
  plan.lp_variables = lp.num_variables();
  plan.lp_rows = lp.num_rows();
  plan.tunnel_res.assign(net.num_tunnels(), 0.0);
  plan.sequence_res.assign(net.num_sequences(), 0.0);
  for (int l = 0; l < net.num_tunnels(); ++l) {
    if (a_var[l] >= 0) plan.tunnel_res[l] = std::max(0.0, sol.x[a_var[l]]);
  }
  objective.fill(sol, plan);
  for (const FlowVars& w : flows) {
    LogicalFlow f;
    f.pair = w.pair;
    f.condition = w.condition;
    f.reservation = std::max(0.0, sol.x[w.b]);
    for (const auto& [seg, v] : w.p) {
      if (sol.x[v] > 1e-12) f.load[seg] = sol.x[v];
    }
    out.flows.flows.push_back(std::move(f));
  }
  return out;
}

}  // namespace rte
