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

// Robust bandwidth reservation models. Each active pair (s,t) gets one
// protected constraint
//
//   sum_l a_l (1 - y_l) + sum_{q in L(s,t)} b_q h_q
//       >= sum_{q in Q(s,t)} b_q h_q + z_st d_st    for all (y, h) in Y
//
// which is either instantiated per integral failure pattern (kEnumerate)
// or replaced by its LP-dual certificate (kDual).

#ifndef RTE_ROBUST_H_
#define RTE_ROBUST_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rte/failure_sets.h"
#include "rte/lp.h"
#include "rte/net.h"

namespace rte {

enum class Model { kFfc, kFfcPlus, kLs, kCls, kLogicalFlow };
enum class ObjectiveKind { kDemandScale, kThroughput };
enum class Mode { kDual, kEnumerate };

// "ffc", "ffc_plus", "ls", "cls", "logical_flow".
const char* model_name(Model m);
const char* objective_name(ObjectiveKind o);  // "demand_scale", "throughput"
const char* mode_name(Mode m);                // "dual", "enumerate"
// Accept the names above; '-' and '_' are interchangeable and "flow" is an
// alias of logical_flow. Unknown names throw kInvalidArgument.
Model parse_model(const std::string& s);
ObjectiveKind parse_objective(const std::string& s);
Mode parse_mode(const std::string& s);

struct RobustOptions {
  Model model = Model::kFfcPlus;
  FailureSpec failure;
  ObjectiveKind objective = ObjectiveKind::kThroughput;
  Mode mode = Mode::kDual;
  double pattern_guard = 1e6;
  lp::SimplexOptions lp;
};

struct ReservationPlan {
  Model model = Model::kFfcPlus;
  Mode mode = Mode::kDual;
  ObjectiveKind objective = ObjectiveKind::kThroughput;
  FailureSpec failure;
  std::vector<double> tunnel_res;    // a_l, by tunnel index
  std::vector<double> sequence_res;  // b_q, by sequence index
  std::map<NodePair, double> z;      // pairs with positive demand
  double objective_value = 0.0;
  int lp_variables = 0;
  int lp_rows = 0;

  // z_st, or 0 for pairs without demand.
  double scale(NodePair p) const {
    auto it = z.find(p);
    return it == z.end() ? 0.0 : it->second;
  }
  // Whether LS q's reservation is usable under `failed`.
  bool sequence_active(const Network& net, int q, const LinkMask& failed) const;
};

// Worst-case-protected inequality: guaranteed >= sum_i loss[i] * u_i for
// every u in the polytope, where loss[i] pairs with polytope.vars[i].
struct ProtectedRow {
  lp::LinExpr guaranteed;
  std::vector<lp::LinExpr> loss;
  std::string name;
};

struct DualCertificate {
  std::vector<int> row_duals;    // one per polytope row
  std::vector<int> bound_duals;  // one per indicator (its upper bound 1)
  int objective_row = -1;
};

// Appends the dual certificate of `row` over `polytope` to `lp`.
DualCertificate dualize_constraint(lp::LinearProgram& lp, const ProtectedRow& row,
                                   const FailurePolytope& polytope);

// Appends one row per 0/1 point (entries aligned with row.loss).
void instantiate_constraint(lp::LinearProgram& lp, const ProtectedRow& row,
                            const std::vector<std::vector<char>>& points);

// Solves the chosen tunnel/LS model. Model::kLogicalFlow delegates to
// solve_logical_flow with every instance condition.
ReservationPlan solve_robust(const Network& net, const RobustOptions& opts);

struct LogicalFlow {
  NodePair pair;
  int condition = -1;  // -1: always active
  double reservation = 0.0;
  std::map<NodePair, double> load;  // p_w(ij) on logical segments
};

struct LogicalFlowPlan {
  std::vector<LogicalFlow> flows;
};

struct LogicalFlowOptions {
  // Condition indices flows may attach to, on top of the always-true one.
  // Empty optional: every instance condition.
  std::optional<std::vector<int>> conditions;
  bool allow_flows = true;  // false: no logical flows at all
  FailureSpec failure;
  ObjectiveKind objective = ObjectiveKind::kThroughput;
  Mode mode = Mode::kDual;
  double pattern_guard = 1e6;
  lp::SimplexOptions lp;
};

struct LogicalFlowResult {
  ReservationPlan plan;
  LogicalFlowPlan flows;
};

LogicalFlowResult solve_logical_flow(const Network& net,
                                     const LogicalFlowOptions& opts);

}  // namespace rte

#endif  // RTE_ROBUST_H_
