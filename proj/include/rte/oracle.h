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

// Edge-based multi-commodity flow on the surviving links of a scenario, one
// commodity per destination. Links are undirected: both directions share
// the capacity.

#ifndef RTE_ORACLE_H_
#define RTE_ORACLE_H_

#include <map>
#include <vector>

#include "rte/net.h"
#include "rte/robust.h"

namespace rte {

struct McfResult {
  std::vector<int> failed;  // link indices
  double objective = 0.0;
  // Per destination node: flow on arc 2e (u->v) and 2e+1 (v->u).
  std::map<int, std::vector<double>> flow;
  std::map<NodePair, double> served;     // traffic delivered per pair
  std::map<NodePair, double> satisfied;  // served / demand
};

McfResult solve_mcf(const Network& net, const std::vector<int>& failed,
                    ObjectiveKind objective);
McfResult solve_mcf(const Network& net, const Scenario& scenario,
                    ObjectiveKind objective);

struct WorstCase {
  double value = 0.0;
  std::vector<int> scenario;  // argmin, link indices
  size_t scenarios = 0;       // number evaluated
};

// Minimum of solve_mcf over every scenario with at most k failed links.
// Ties keep the scenario that comes first in enumeration order.
WorstCase worst_case_optimal(const Network& net, int k, ObjectiveKind objective,
                             double guard = 1e6);

// Chain s0..sm: p parallel links of capacity 1/p between s0 and s1 and n
// parallel links of capacity 1 between later neighbours. Unit demand
// s0->sm, every s0-sm path as a tunnel, one tunnel per link and the LS
// (s0, s1, ..., sm). Requires p >= n >= 2 and m >= 2.
NetworkInstance generalized_family(int p, int n, int m);

}  // namespace rte

#endif  // RTE_ORACLE_H_
