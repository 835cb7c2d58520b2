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

#ifndef RTE_FLOMORE_INTERNAL_H_
#define RTE_FLOMORE_INTERNAL_H_

#include <string>
#include <vector>

#include "rte/flomore.h"

namespace rte::detail {

// Variables of one scenario: bandwidth per live tunnel of a demand pair and
// one loss in [0,1] per group.
struct ScenarioBlock {
  std::vector<int> x;     // by tunnel, -1 when absent
  std::vector<int> loss;  // by group
};

// Adds the block with its demand rows (delivered + lost >= demand, per
// pair) and capacity rows over the live links.
ScenarioBlock add_scenario_block(lp::LinearProgram& lp, const ProbabilisticInstance& pinst,
                                 const LossGroups& groups, int q, const std::string& tag);

// Same rows for one static allocation shared by all scenarios: capacity is
// charged for every tunnel, delivered bandwidth counts live tunnels only.
std::vector<int> add_static_allocation(lp::LinearProgram& lp,
                                       const ProbabilisticInstance& pinst);
void add_static_demand_rows(lp::LinearProgram& lp, const ProbabilisticInstance& pinst,
                            const LossGroups& groups, int q, const std::vector<int>& x,
                            const std::vector<int>& loss);

// Throws kInfeasibleTarget when a group cannot reach its beta even with
// every connected scenario selected.
void check_availability(const ProbabilisticInstance& pinst, const LossGroups& groups);
bool group_connected(const ProbabilisticInstance& pinst, const LossGroups& groups, int g,
                     int q);
// Whether z_gq = 0 would leave group g short of its beta: the rest of its
// connected mass is below the target. Such entries can be fixed to 1.
bool forced_on(const ProbabilisticInstance& pinst, const LossGroups& groups, int g, int q);

// Per-flow loss rows from per-group losses.
std::vector<std::vector<double>> flow_losses(const ProbabilisticInstance& pinst,
                                             const LossGroups& groups,
                                             const std::vector<std::vector<double>>& by_group);

lp::Solution solve_or_throw(const lp::LinearProgram& lp, const char* what);

}  // namespace rte::detail

#endif  // RTE_FLOMORE_INTERNAL_H_
