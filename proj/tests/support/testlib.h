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

// Random instances and small independent oracles shared by the test
// binaries. Nothing here calls the LP solver.

#ifndef RTE_TESTS_TESTLIB_H_
#define RTE_TESTS_TESTLIB_H_

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "rte/net.h"
#include "rte/realize.h"
#include "rte/robust.h"

namespace rte::testing {

struct RandomSpec {
  int min_nodes = 4;
  int max_nodes = 6;
  int extra_links = 3;
  int max_demands = 2;
  int tunnels_per_pair = 3;
  bool with_sequences = true;  // LS (s,m,t) plus a conditional copy
};

// Connected topology, unit-ish capacities, tunnels from select_tunnels.
NetworkInstance random_instance(uint64_t seed, const RandomSpec& spec = {});

// Up to `max_flows` flows and an explicit scenario list of at most
// `max_scenarios` entries (no-failure first, mass >= 0.9), probabilities
// summing to 1.
NetworkInstance random_prob_instance(uint64_t seed, int max_nodes = 5,
                                     int max_scenarios = 10, int max_flows = 4);

// Adds one random simple path between a demand pair as a new tunnel.
// Returns false when every simple path is already a tunnel.
bool add_random_tunnel(NetworkInstance& in, uint64_t seed);

// Edmonds-Karp on the undirected surviving links.
double max_flow(const Network& net, int s, int t, const std::vector<int>& failed);

// Worst-case served traffic of a single-demand instance over every set of
// at most k failed links: min(demand, max flow).
double single_demand_oracle(const Network& net, int k);

// Dense Eigen copy of a reservation system solved with a full-pivot LU.
std::vector<double> dense_solve(const ReservationMatrix& m, const std::vector<double>& rhs);

// Largest imbalance of the realized routing: per destination t and node v,
// |out - in - delivered(v,t)| with the sink row using the total.
double flow_balance_error(const Network& net, const ScenarioRouting& r);

// Smallest v with cumulative mass >= beta - 1e-9, by sorting.
double sorted_percentile(const std::vector<double>& v, const std::vector<double>& p,
                         double beta);

// Tail mean by sorting: the mass above the beta quantile, split exactly.
double sorted_cvar(const std::vector<double>& v, const std::vector<double>& p, double beta);

RobustOptions options(Model m, int k, ObjectiveKind obj = ObjectiveKind::kThroughput,
                      Mode mode = Mode::kDual);

}  // namespace rte::testing

#endif  // RTE_TESTS_TESTLIB_H_
