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

// Pieces shared by the tunnel/LS models and the logical-flow model.

#ifndef RTE_SRC_ROBUST_INTERNAL_H_
#define RTE_SRC_ROBUST_INTERNAL_H_

#include <map>
#include <vector>

#include "rte/robust.h"

namespace rte {
namespace detail {

// z variables and the objective. Demand scale uses one scalar z shared by
// every pair; throughput uses z_st >= 0 and t_st in [0,1] with t_st <= z_st.
class ObjectiveBuilder {
 public:
  ObjectiveBuilder(lp::LinearProgram& lp, const Network& net, ObjectiveKind kind);

  // Adds -z_st * d_st to `e`.
  void subtract_demand(lp::LinExpr& e, NodePair p) const;
  void set_objective();
  void fill(const lp::Solution& sol, ReservationPlan& plan) const;

 private:
  lp::LinearProgram& lp_;
  const Network& net_;
  ObjectiveKind kind_;
  int zscalar_ = -1;
  std::map<NodePair, int> z_, t_;
};

// a_var[l] is the LP variable of tunnel l or -1.
void add_capacity_rows(lp::LinearProgram& lp, const Network& net,
                       const std::vector<int>& a_var);

// Emits `row` over the polytope restricted to (tunnels, conditions), in the
// requested mode.
void emit_protected(lp::LinearProgram& lp, const Network& net,
                    const ProtectedRow& row, PolytopeKind kind,
                    const FailureSpec& spec, const std::vector<int>& tunnels,
                    const std::vector<int>& conditions, Mode mode, double guard);

// Infeasible or unbounded programs indicate a modeling bug here.
lp::Solution solve_or_throw(const lp::LinearProgram& lp,
                            const lp::SimplexOptions& opts, const char* what);

}  // namespace detail
}  // namespace rte

#endif  // RTE_SRC_ROBUST_INTERNAL_H_
