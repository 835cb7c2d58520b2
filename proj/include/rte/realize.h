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

// Online realization of a reservation plan for one failure scenario.

#ifndef RTE_REALIZE_H_
#define RTE_REALIZE_H_

#include <map>
#include <vector>

#include "rte/net.h"
#include "rte/robust.h"

namespace rte {

// Square system over the pairs of interest P. Dense; P has at most |V|^2
// entries.
struct ReservationMatrix {
  std::vector<NodePair> pairs;
  std::vector<std::vector<double>> m;
  std::vector<double> demand;  // z_p * d_p
  // Destination node -> demand restricted to pairs ending there.
  std::map<int, std::vector<double>> demand_to;

  int find(NodePair p) const;  // -1 when p is not in P
  size_t size() const { return pairs.size(); }
};

// Dead tunnels and inactive or zero LS are left out. Pairs are sorted.
ReservationMatrix build_reservation_matrix(const Network& net,
                                           const ReservationPlan& plan,
                                           const LinkMask& failed);

// Throws Error(kMatrixNotWcdd) when an off-diagonal entry is positive, a row
// sum falls below its demand, or some row has no chain to a strictly
// dominant row.
void check_wcdd(const ReservationMatrix& matrix, double tol = 1e-7);

enum class LinearSolver { kGauss, kJacobi };

// Solves M u = rhs after check_wcdd. Jacobi throws kSolverStall when it does
// not reach 1e-12 within its iteration budget.
std::vector<double> solve_reservation_system(const ReservationMatrix& matrix,
                                             const std::vector<double>& rhs,
                                             LinearSolver solver = LinearSolver::kGauss);
std::vector<double> solve_reservation_system(const ReservationMatrix& matrix,
                                             LinearSolver solver = LinearSolver::kGauss);

struct ScenarioRouting {
  std::vector<int> failed;
  // Destination node -> r_lt by tunnel index.
  std::map<int, std::vector<double>> flow;
  std::map<NodePair, double> delivered;  // z_p * d_p

  std::vector<double> tunnel_load(const Network& net) const;  // sum over destinations
  std::vector<double> link_load(const Network& net) const;
};

ScenarioRouting extract_routing(const Network& net, const ReservationPlan& plan,
                                const LinkMask& failed,
                                LinearSolver solver = LinearSolver::kGauss);

// Removes directed cycles of positive per-destination tunnel flow, one DFS
// cycle at a time. Deterministic: nodes and tunnels in index order.
void cancel_cycles(const Network& net, ScenarioRouting& routing, double tol = 1e-12);

struct TopologicalOrder {
  bool sorted = true;
  std::vector<NodePair> order;  // segments come before the pairs using them
  std::vector<NodePair> cycle;  // shortest cycle when !sorted
};

// The relation links the pair of every active LS in `sequences` to each of
// its segments.
TopologicalOrder check_topological_sort(const Network& net,
                                        const std::vector<int>& sequences,
                                        const LinkMask& failed);

// Splits each pair's offered traffic over live tunnels and active LS in
// proportion to their reservations, starting from pairs nobody uses as a
// segment. Throws kNotTopologicallySorted on a cycle.
ScenarioRouting proportional_routing(const Network& net, const ReservationPlan& plan,
                                     const LinkMask& failed);

// Greedy in input order: keeps an LS when the kept set stays sortable under
// every scenario of `scenarios` (lists of failed link indices). An empty
// family stands for the no-failure scenario.
std::vector<int> prune_ls(const Network& net, const std::vector<int>& sequences,
                          const std::vector<std::vector<int>>& scenarios);

// One LS per logical flow with positive reservation: the widest path over
// the flow's segment loads, fewer hops and then smaller node ids on ties.
// The LS keeps the flow's condition.
std::vector<LogicalSequence> widest_path_decompose(const Network& net,
                                                   const LogicalFlowPlan& flows);

}  // namespace rte

#endif  // RTE_REALIZE_H_
