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

// Shared scenario rows, the per-scenario subproblem and the direct MIP.

#include <algorithm>
#include <map>

#include "internal.h"
#include "rte/parallel.h"

namespace rte {
namespace detail {

namespace {

// Pair -> (flow, demand) list.
std::map<NodePair, std::vector<int>> flows_by_pair(const Network& net) {
  std::map<NodePair, std::vector<int>> out;
  for (int f = 0; f < net.num_flows(); ++f) out[net.flow_pair(f)].push_back(f);
  return out;
}

double flow_demand(const Network& net, int f) { return net.instance().demands[f].demand; }

}  // namespace

ScenarioBlock add_scenario_block(lp::LinearProgram& lp, const ProbabilisticInstance& pinst,
                                 const LossGroups& groups, int q, const std::string& tag) {
  const Network& net = pinst.net;
  ScenarioBlock b;
  b.x.assign(net.num_tunnels(), -1);
  for (int g = 0; g < groups.size(); ++g) {
    b.loss.push_back(lp.add_variable("l" + tag + "." + std::to_string(g), 0.0, 1.0));
  }
  const auto by_pair = flows_by_pair(net);
  for (const auto& [p, flows] : by_pair) {
    lp::LinExpr row;
    double total = 0.0;
    for (int l : net.tunnels_of(p)) {
      if (!pinst.alive[q][l]) continue;
      b.x[l] = lp.add_variable("x" + tag + "." + net.instance().tunnels[l].id);
      row.add(b.x[l], 1.0);
    }
    for (int f : flows) {
      row.add(b.loss[groups.of_flow[f]], flow_demand(net, f));
      total += flow_demand(net, f);
    }
    if (total <= 0.0) continue;
    lp.add_row(row, lp::Sense::kGe, total, "dem" + tag + "." + net.pair_name(p));
  }
  std::vector<lp::LinExpr> on_link(net.num_links());
  for (int l = 0; l < net.num_tunnels(); ++l) {
    if (b.x[l] < 0) continue;
    for (int e : net.tunnel_links(l)) on_link[e].add(b.x[l], 1.0);
  }
  for (int e = 0; e < net.num_links(); ++e) {
    if (on_link[e].terms.empty()) continue;
    lp.add_row(on_link[e], lp::Sense::kLe, net.capacity(e), "cap" + tag + "." + net.link_id(e));
  }
  return b;
}

std::vector<int> add_static_allocation(lp::LinearProgram& lp,
                                       const ProbabilisticInstance& pinst) {
  const Network& net = pinst.net;
  std::vector<int> x(net.num_tunnels(), -1);
  for (const auto& [p, flows] : flows_by_pair(net)) {
    for (int l : net.tunnels_of(p)) x[l] = lp.add_variable("x." + net.instance().tunnels[l].id);
  }
  std::vector<lp::LinExpr> on_link(net.num_links());
  for (int l = 0; l < net.num_tunnels(); ++l) {
    if (x[l] < 0) continue;
    for (int e : net.tunnel_links(l)) on_link[e].add(x[l], 1.0);
  }
  for (int e = 0; e < net.num_links(); ++e) {
    if (on_link[e].terms.empty()) continue;
    lp.add_row(on_link[e], lp::Sense::kLe, net.capacity(e), "cap." + net.link_id(e));
  }
  return x;
}

void add_static_demand_rows(lp::LinearProgram& lp, const ProbabilisticInstance& pinst,
                            const LossGroups& groups, int q, const std::vector<int>& x,
                            const std::vector<int>& loss) {
  const Network& net = pinst.net;
  for (const auto& [p, flows] : flows_by_pair(net)) {
    lp::LinExpr row;
    double total = 0.0;
    for (int l : net.tunnels_of(p)) {
      if (pinst.alive[q][l]) row.add(x[l], 1.0);
    }
    for (int f : flows) {
      row.add(loss[groups.of_flow[f]], flow_demand(net, f));
      total += flow_demand(net, f);
    }
    if (total <= 0.0) continue;
    lp.add_row(row, lp::Sense::kGe, total);
  }
}

bool group_connected(const ProbabilisticInstance& pinst, const LossGroups& groups, int g,
                     int q) {
  for (int f : groups.members[g]) {
    if (flow_demand(pinst.net, f) > 0.0 && !pinst.connected(f, q)) return false;
  }
  return true;
}

bool forced_on(const ProbabilisticInstance& pinst, const LossGroups& groups, int g, int q) {
  if (!group_connected(pinst, groups, g, q)) return false;
  double rest = 0.0;
  for (int r = 0; r < pinst.num_scenarios(); ++r) {
    if (r != q && group_connected(pinst, groups, g, r)) rest += pinst.scenarios[r].prob;
  }
  return rest < groups.beta[g] - kProbTol;
}

void check_availability(const ProbabilisticInstance& pinst, const LossGroups& groups) {
  for (int g = 0; g < groups.size(); ++g) {
    double mass = 0.0;
    for (int q = 0; q < pinst.num_scenarios(); ++q) {
      if (group_connected(pinst, groups, g, q)) mass += pinst.scenarios[q].prob;
    }
    if (mass < groups.beta[g] - kProbTol) {
      const int f = groups.members[g].front();
      throw Error(ErrorCode::kInfeasibleTarget,
                  "flow " + pinst.net.instance().demands[f].flow_id + " is connected in " +
                      std::to_string(mass) + " of the mass, below beta " +
                      std::to_string(groups.beta[g]));
    }
  }
}

std::vector<std::vector<double>> flow_losses(const ProbabilisticInstance& pinst,
                                             const LossGroups& groups,
                                             const std::vector<std::vector<double>>& by_group) {
  std::vector<std::vector<double>> out(pinst.net.num_flows());
  for (int f = 0; f < pinst.net.num_flows(); ++f) out[f] = by_group[groups.of_flow[f]];
  return out;
}

lp::Solution solve_or_throw(const lp::LinearProgram& lp, const char* what) {
  lp::Solution sol = lp::solve_lp(lp);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kInternalModelError,
                std::string(what) + " is " + lp::status_name(sol.status));
  }
  return sol;
}

}  // namespace detail

double Cut::eval(const std::vector<char>& zcol) const {
  double v = constant;
  for (size_t g = 0; g < coeff.size(); ++g) v += coeff[g] * zcol[g];
  return v;
}

SubproblemResult benders_subproblem(const ProbabilisticInstance& pinst,
                                    const LossGroups& groups, int q,
                                    const std::vector<char>& zcol) {
  if (q < 0 || q >= pinst.num_scenarios() || static_cast<int>(zcol.size()) != groups.size()) {
    throw Error(ErrorCode::kInvalidArgument, "bad scenario index or z column");
  }
  lp::LinearProgram lp;
  const detail::ScenarioBlock b = detail::add_scenario_block(lp, pinst, groups, q, "");
  const int alpha = lp.add_variable("alpha");
  std::vector<int> bound_rows;
  for (int g = 0; g < groups.size(); ++g) {
    // alpha >= l_g - th_g - 1 + z_g
    bound_rows.push_back(lp.add_row(lp::LinExpr().add(alpha, 1.0).add(b.loss[g], -1.0),
                                    lp::Sense::kGe, zcol[g] - 1.0 - groups.threshold[g],
                                    "lb." + std::to_string(g)));
  }
  lp.set_objective(lp::ObjSense::kMin, lp::LinExpr().add(alpha, 1.0));
  const lp::Solution sol = detail::solve_or_throw(lp, "scenario subproblem");

  SubproblemResult out;
  out.alpha = std::max(0.0, sol.objective);
  out.cut.scenario = q;
  out.cut.constant = sol.objective;
  for (int g = 0; g < groups.size(); ++g) {
    const double w = sol.duals[bound_rows[g]];
    out.cut.coeff.push_back(w);
    out.cut.constant -= w * zcol[g];
  }

  // Same alpha, least total loss, so flows outside the critical set are
  // still served where capacity allows.
  lp.set_bounds(alpha, 0.0, sol.objective + 1e-9);
  lp::LinExpr total;
  for (int v : b.loss) total.add(v, 1.0);
  lp.set_objective(lp::ObjSense::kMin, total);
  const lp::Solution routed = detail::solve_or_throw(lp, "scenario routing");
  out.x.assign(pinst.net.num_tunnels(), 0.0);
  for (int l = 0; l < pinst.net.num_tunnels(); ++l) {
    if (b.x[l] >= 0) out.x[l] = std::max(0.0, routed.x[b.x[l]]);
  }
  for (int v : b.loss) {
    double l = std::clamp(routed.x[v], 0.0, 1.0);
    if (l < 1e-9) l = 0.0;
    out.loss.push_back(l);
  }
  return out;
}

namespace {

// Routes every scenario through the subproblem at the given z and fills the
// routing and report.
void route_all(const ProbabilisticInstance& pinst, FloMoreResult& r) {
  const int nq = pinst.num_scenarios();
  std::vector<SubproblemResult> subs(nq);
  parallel_for(nq, [&](size_t q) {
    std::vector<char> zcol(r.groups.size());
    for (int g = 0; g < r.groups.size(); ++g) zcol[g] = r.z[g][q];
    subs[q] = benders_subproblem(pinst, r.groups, static_cast<int>(q), zcol);
  });
  std::vector<std::vector<double>> by_group(r.groups.size(), std::vector<double>(nq));
  r.routing.x.assign(nq, {});
  for (int q = 0; q < nq; ++q) {
    r.routing.x[q] = subs[q].x;
    for (int g = 0; g < r.groups.size(); ++g) by_group[g][q] = subs[q].loss[g];
  }
  r.routing.loss = detail::flow_losses(pinst, r.groups, by_group);
  r.report = percentile_analysis(pinst, r.routing.loss);
}

}  // namespace

FloMoreResult solve_direct_mip(const ProbabilisticInstance& pinst, const FloMoreOptions& opts) {
  FloMoreResult r;
  r.groups = make_loss_groups(pinst, opts.flow_sets);
  detail::check_availability(pinst, r.groups);
  const int nq = pinst.num_scenarios();
  const int ng = r.groups.size();

  lp::LinearProgram lp;
  const int alpha = lp.add_variable("alpha");
  std::vector<std::vector<int>> z(ng, std::vector<int>(nq));
  for (int q = 0; q < nq; ++q) {
    const detail::ScenarioBlock b =
        detail::add_scenario_block(lp, pinst, r.groups, q, "." + std::to_string(q));
    for (int g = 0; g < ng; ++g) {
      z[g][q] = lp.add_binary("z." + std::to_string(g) + "." + std::to_string(q));
      if (detail::forced_on(pinst, r.groups, g, q)) lp.set_bounds(z[g][q], 1.0, 1.0);
      lp.add_row(lp::LinExpr().add(alpha, 1.0).add(b.loss[g], -1.0).add(z[g][q], -1.0),
                 lp::Sense::kGe, -1.0 - r.groups.threshold[g]);
    }
  }
  for (int g = 0; g < ng; ++g) {
    lp::LinExpr avail;
    for (int q = 0; q < nq; ++q) avail.add(z[g][q], pinst.scenarios[q].prob);
    lp.add_row(avail, lp::Sense::kGe, r.groups.beta[g] - kProbTol,
               "avail." + std::to_string(g));
  }
  lp.set_objective(lp::ObjSense::kMin, lp::LinExpr().add(alpha, 1.0));
  const lp::Solution sol = lp::solve_mip(lp, opts.mip);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kInternalModelError,
                std::string("direct MIP is ") + lp::status_name(sol.status));
  }
  r.alpha = std::max(0.0, sol.objective);
  r.z.assign(ng, std::vector<char>(nq, 0));
  for (int g = 0; g < ng; ++g) {
    for (int q = 0; q < nq; ++q) r.z[g][q] = sol.x[z[g][q]] > 0.5;
  }
  route_all(pinst, r);
  return r;
}

FloMoreResult minmax_baseline(const ProbabilisticInstance& pinst) {
  FloMoreResult r;
  r.groups = make_loss_groups(pinst);
  r.z.assign(r.groups.size(), std::vector<char>(pinst.num_scenarios(), 1));
  route_all(pinst, r);
  r.alpha = r.report.max_flow_pct_loss;
  return r;
}

}  // namespace rte
