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

// CVaR baselines in the Rockafellar-Uryasev form:
//   CVaR = min eta + sum_q p_q (loss_q - eta)^+ / (1 - beta).

#include <algorithm>

#include "internal.h"

namespace rte {

const char* cvar_variant_name(CvarVariant v) {
  switch (v) {
    case CvarVariant::kFlowAdaptive: return "flow_adaptive";
    case CvarVariant::kFlowStatic: return "flow_static";
    case CvarVariant::kScenStatic: return "scen_static";
  }
  return "?";
}

CvarVariant parse_cvar_variant(const std::string& s) {
  std::string t = s;
  std::replace(t.begin(), t.end(), '-', '_');
  for (CvarVariant v : {CvarVariant::kFlowAdaptive, CvarVariant::kFlowStatic,
                        CvarVariant::kScenStatic}) {
    if (t == cvar_variant_name(v)) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown CVaR variant: " + s);
}

CvarResult solve_cvar(const ProbabilisticInstance& pinst, CvarVariant variant) {
  const Network& net = pinst.net;
  const LossGroups groups = make_loss_groups(pinst);  // one per flow
  const int nf = net.num_flows();
  const int nq = pinst.num_scenarios();
  const bool adaptive = variant == CvarVariant::kFlowAdaptive;

  lp::LinearProgram lp;
  std::vector<int> x_static;
  if (!adaptive) x_static = detail::add_static_allocation(lp, pinst);
  std::vector<detail::ScenarioBlock> blocks;
  for (int q = 0; q < nq; ++q) {
    const std::string tag = "." + std::to_string(q);
    if (adaptive) {
      blocks.push_back(detail::add_scenario_block(lp, pinst, groups, q, tag));
      continue;
    }
    detail::ScenarioBlock b;
    for (int g = 0; g < groups.size(); ++g) {
      b.loss.push_back(lp.add_variable("l" + tag + "." + std::to_string(g), 0.0, 1.0));
    }
    detail::add_static_demand_rows(lp, pinst, groups, q, x_static, b.loss);
    blocks.push_back(std::move(b));
  }

  const int theta = lp.add_variable("theta");
  if (variant == CvarVariant::kScenStatic) {
    const int eta = lp.add_variable("eta", 0.0, 1.0);
    lp::LinExpr row;
    row.add(theta, 1.0).add(eta, -1.0);
    for (int q = 0; q < nq; ++q) {
      const int s = lp.add_variable("s." + std::to_string(q));
      for (int f = 0; f < nf; ++f) {
        lp.add_row(lp::LinExpr().add(s, 1.0).add(blocks[q].loss[groups.of_flow[f]], -1.0)
                       .add(eta, 1.0),
                   lp::Sense::kGe, 0.0);
      }
      row.add(s, -pinst.scenarios[q].prob / (1.0 - pinst.beta));
    }
    lp.add_row(row, lp::Sense::kGe, 0.0, "cvar");
  } else {
    for (int f = 0; f < nf; ++f) {
      const int eta = lp.add_variable("eta." + std::to_string(f), 0.0, 1.0);
      lp::LinExpr row;
      row.add(theta, 1.0).add(eta, -1.0);
      for (int q = 0; q < nq; ++q) {
        const int s = lp.add_variable("s." + std::to_string(f) + "." + std::to_string(q));
        lp.add_row(lp::LinExpr().add(s, 1.0).add(blocks[q].loss[groups.of_flow[f]], -1.0)
                       .add(eta, 1.0),
                   lp::Sense::kGe, 0.0);
        row.add(s, -pinst.scenarios[q].prob / (1.0 - pinst.flow_beta[f]));
      }
      lp.add_row(row, lp::Sense::kGe, 0.0, "cvar." + std::to_string(f));
    }
  }
  lp.set_objective(lp::ObjSense::kMin, lp::LinExpr().add(theta, 1.0));
  const lp::Solution sol = detail::solve_or_throw(lp, "CVaR model");

  CvarResult out;
  out.objective = sol.objective;
  out.routing.x.assign(nq, std::vector<double>(net.num_tunnels(), 0.0));
  for (int q = 0; q < nq; ++q) {
    for (int l = 0; l < net.num_tunnels(); ++l) {
      const int v = adaptive ? blocks[q].x[l] : (pinst.alive[q][l] ? x_static[l] : -1);
      if (v >= 0) out.routing.x[q][l] = std::max(0.0, sol.x[v]);
    }
  }
  out.routing.loss = losses_from_allocation(pinst, out.routing.x);
  out.report = percentile_analysis(pinst, out.routing.loss);
  std::vector<double> probs;
  for (const ProbScenario& s : pinst.scenarios) probs.push_back(s.prob);
  for (int f = 0; f < nf; ++f) {
    out.max_flow_cvar =
        std::max(out.max_flow_cvar, cvar(out.routing.loss[f], probs, pinst.flow_beta[f]));
  }
  return out;
}

}  // namespace rte
