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

#include <gtest/gtest.h>

#include "rte/harness.h"
#include "rte/oracle.h"
#include "support/testlib.h"

namespace rte {
namespace {

NetworkInstance single_demand(uint64_t seed) {
  testing::RandomSpec spec;
  spec.max_demands = 1;
  spec.with_sequences = false;
  NetworkInstance in = testing::random_instance(seed, spec);
  in.demands.resize(1);
  in.demands[0].demand = 10.0;  // never the bottleneck
  return in;
}

TEST(OracleProperty, MatchesMaxFlowOnSingleDemand) {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    const Network net(single_demand(seed));
    for (int k = 0; k <= 2; ++k) {
      const WorstCase w = worst_case_optimal(net, k, ObjectiveKind::kThroughput);
      EXPECT_NEAR(w.value, testing::single_demand_oracle(net, k), 1e-7)
          << "seed " << seed << " k " << k;
      EXPECT_EQ(w.scenarios, static_cast<size_t>(count_failure_sets(net.num_links(), k)));
    }
  }
}

TEST(OracleProperty, NonIncreasingInK) {
  for (uint64_t seed = 30; seed <= 45; ++seed) {
    const Network net(testing::random_instance(seed));
    for (ObjectiveKind obj : {ObjectiveKind::kThroughput, ObjectiveKind::kDemandScale}) {
      double prev = 1e18;
      for (int k = 0; k <= 3; ++k) {
        const double v = worst_case_optimal(net, k, obj).value;
        EXPECT_LE(v, prev + 1e-7) << seed;
        prev = v;
      }
    }
  }
}

TEST(OracleProperty, FlowRespectsCapacityAndDemand) {
  for (uint64_t seed = 50; seed <= 65; ++seed) {
    const Network net(testing::random_instance(seed));
    const std::vector<int> failed = {static_cast<int>(seed % net.num_links())};
    const McfResult r = solve_mcf(net, failed, ObjectiveKind::kThroughput);
    std::vector<double> load(net.num_links(), 0.0);
    for (const auto& [dst, f] : r.flow) {
      for (int e = 0; e < net.num_links(); ++e) {
        EXPECT_GE(f[2 * e], -1e-9);
        EXPECT_GE(f[2 * e + 1], -1e-9);
        load[e] += f[2 * e] + f[2 * e + 1];
      }
    }
    EXPECT_NEAR(load[failed[0]], 0.0, 1e-9);
    for (int e = 0; e < net.num_links(); ++e) EXPECT_LE(load[e], net.capacity(e) + 1e-7);
    double total = 0.0;
    for (const auto& [p, s] : r.served) {
      EXPECT_LE(s, net.demand(p) + 1e-7);
      total += s;
    }
    EXPECT_NEAR(total, r.objective, 1e-7);
  }
}

TEST(Oracle, DemandScaleIsMinRatio) {
  // 2 units fit through s-1-t and s-2-t after one failure; demand is 3.
  const Network net(fixtures::four_tunnel(true));
  const WorstCase w = worst_case_optimal(net, 1, ObjectiveKind::kDemandScale);
  EXPECT_NEAR(w.value, 2.0 / 3, 1e-9);
  const McfResult r = solve_mcf(net, Scenario{}, ObjectiveKind::kDemandScale);
  EXPECT_NEAR(r.objective, 1.0, 1e-9);
}

TEST(Oracle, TiesKeepFirstScenario) {
  const Network net(fixtures::parallel());
  const WorstCase w = worst_case_optimal(net, 1, ObjectiveKind::kThroughput);
  // Any s-u link costs the same; e1 is first.
  EXPECT_EQ(w.scenario, std::vector<int>{net.link("e1")});
  EXPECT_THROW(worst_case_optimal(net, 2, ObjectiveKind::kThroughput, 5), Error);
}

TEST(Generalized, Shape) {
  const NetworkInstance in = generalized_family(4, 2, 3);
  const Network net(in);
  EXPECT_EQ(net.num_nodes(), 4);
  EXPECT_EQ(net.num_links(), 4 + 2 + 2);
  EXPECT_EQ(net.num_sequences(), 1);
  // 4*2*2 end-to-end tunnels plus one per link.
  EXPECT_EQ(net.num_tunnels(), 16 + 8);
  EXPECT_THROW(generalized_family(2, 3, 3), Error);
  EXPECT_THROW(generalized_family(3, 1, 3), Error);
  EXPECT_THROW(generalized_family(3, 2, 1), Error);
  EXPECT_NEAR(worst_case_optimal(net, 1, ObjectiveKind::kThroughput).value, 0.75, 1e-9);
}

}  // namespace
}  // namespace rte
