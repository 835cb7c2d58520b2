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
#include "rte/realize.h"
#include "support/testlib.h"

namespace rte {
namespace {

using testing::options;

TEST(RealizeProperty, SolversAgreeWithDenseLu) {
  int systems = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Network net(testing::random_instance(seed));
    for (Model m : {Model::kLs, Model::kCls}) {
      const ReservationPlan plan = solve_robust(net, options(m, 1));
      for (const auto& failed : enumerate_failure_sets(net, 1)) {
        const ReservationMatrix mat =
            build_reservation_matrix(net, plan, make_mask(net, failed));
        if (mat.size() == 0) continue;
        const auto dense = testing::dense_solve(mat, mat.demand);
        const auto gauss = solve_reservation_system(mat, LinearSolver::kGauss);
        const auto jacobi = solve_reservation_system(mat, LinearSolver::kJacobi);
        ASSERT_EQ(gauss.size(), mat.size());
        for (size_t i = 0; i < mat.size(); ++i) {
          EXPECT_NEAR(gauss[i], dense[i], 1e-8) << seed;
          EXPECT_NEAR(jacobi[i], gauss[i], 1e-8) << seed;
        }
        ++systems;
      }
    }
  }
  EXPECT_GT(systems, 100);
}

TEST(RealizeProperty, RoutingDeliversScaledDemand) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Network net(testing::random_instance(seed));
    const int k = 1 + static_cast<int>(seed % 2);
    const ReservationPlan plan = solve_robust(net, options(Model::kCls, k));
    for (const auto& failed : enumerate_failure_sets(net, k)) {
      const ScenarioRouting r = extract_routing(net, plan, make_mask(net, failed));
      EXPECT_LE(testing::flow_balance_error(net, r), 1e-7) << seed;
      for (NodePair p : net.demand_pairs()) {
        const auto it = r.delivered.find(p);
        EXPECT_NEAR(it == r.delivered.end() ? 0.0 : it->second,
                    plan.scale(p) * net.demand(p), 1e-7);
      }
      const auto load = r.link_load(net);
      for (int e = 0; e < net.num_links(); ++e) {
        EXPECT_LE(load[e], net.capacity(e) + 1e-6) << seed;
        if (make_mask(net, failed)[e]) EXPECT_NEAR(load[e], 0.0, 1e-9);
      }
    }
  }
}

TEST(Realize, WcddRejects) {
  ReservationMatrix m;
  m.pairs = {{0, 1}, {0, 2}};
  m.m = {{1.0, 0.5}, {0.0, 1.0}};
  m.demand = {0.0, 0.0};
  EXPECT_THROW(check_wcdd(m), Error);
  m.m = {{1.0, -1.0}, {-1.0, 1.0}};  // no strictly dominant row
  EXPECT_THROW(check_wcdd(m), Error);
  try {
    solve_reservation_system(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMatrixNotWcdd);
  }
  m.m = {{1.0, -0.5}, {0.0, 1.0}};
  EXPECT_NO_THROW(check_wcdd(m));
  const auto u = solve_reservation_system(m, {1.0, 2.0});
  EXPECT_NEAR(u[1], 2.0, 1e-12);
  EXPECT_NEAR(u[0], 2.0, 1e-12);
}

TEST(Realize, CyclicSequences) {
  const Network net(fixtures::realization(true));
  const LinkMask none = make_mask(net, {});
  const TopologicalOrder t = check_topological_sort(net, {0, 1, 2}, none);
  EXPECT_FALSE(t.sorted);
  EXPECT_EQ(t.cycle.size(), 2u);
  EXPECT_TRUE(check_topological_sort(net, {0, 1}, none).sorted);
  // LS activity follows conditions only; failing A-B keeps the cycle.
  EXPECT_FALSE(check_topological_sort(net, {0, 1, 2}, make_mask(net, {net.link("A-B")})).sorted);

  const ReservationPlan plan = fixtures::realization_plan(net);
  try {
    proportional_routing(net, plan, none);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotTopologicallySorted);
  }
  // The matrix route still works on the cycle.
  const ScenarioRouting r = extract_routing(net, plan, none);
  EXPECT_LE(testing::flow_balance_error(net, r), 1e-9);

  EXPECT_EQ(prune_ls(net, {0, 1, 2}, {}), (std::vector<int>{0, 1}));
  EXPECT_EQ(prune_ls(net, {2, 0, 1}, {}), (std::vector<int>{2, 0}));
}

TEST(Realize, ProportionalMatchesExtractWhenSorted) {
  const Network net(fixtures::realization(false));
  const ReservationPlan plan = fixtures::realization_plan(net);
  const LinkMask none = make_mask(net, {});
  const TopologicalOrder t = check_topological_sort(net, {0, 1}, none);
  ASSERT_TRUE(t.sorted);
  // A-D is a segment of A-B, so it comes first.
  const auto pos = [&](const char* s, const char* d) {
    return std::find(t.order.begin(), t.order.end(), NodePair{net.node(s), net.node(d)}) -
           t.order.begin();
  };
  EXPECT_LT(pos("A", "D"), pos("A", "B"));
  const ScenarioRouting a = proportional_routing(net, plan, none);
  const ScenarioRouting b = extract_routing(net, plan, none);
  const auto la = a.tunnel_load(net), lb = b.tunnel_load(net);
  for (int l = 0; l < net.num_tunnels(); ++l) EXPECT_NEAR(la[l], lb[l], 1e-9);
}

TEST(Realize, CancelCyclesRemovesLoop) {
  const Network net(fixtures::realization(false));
  const ReservationPlan plan = fixtures::realization_plan(net);
  ScenarioRouting r = extract_routing(net, plan, make_mask(net, {}));
  const ScenarioRouting before = r;
  const int b = net.node("B");
  r.flow[b][net.tunnel("T3")] += 0.3;  // A->D
  r.flow[b][net.tunnel("T4")] += 0.3;  // D->A
  EXPECT_LE(testing::flow_balance_error(net, r), 1e-9);
  cancel_cycles(net, r);
  // Every cycle towards B runs over T4.
  EXPECT_NEAR(r.flow[b][net.tunnel("T4")], 0.0, 1e-12);
  EXPECT_LE(testing::flow_balance_error(net, r), 1e-9);
  double sum = 0.0, sum_before = 0.0;
  for (int l = 0; l < net.num_tunnels(); ++l) {
    EXPECT_GE(r.flow[b][l], -1e-12);
    sum += r.flow[b][l];
    sum_before += before.flow.at(b)[l];
  }
  EXPECT_LE(sum, sum_before + 1e-12);
  EXPECT_EQ(r.delivered, before.delivered);
}

TEST(Realize, WidestPathDecompose) {
  const Network net(fixtures::hint());
  const NodePair st{net.node("s"), net.node("t")};
  const NodePair s4{net.node("s"), net.node("4")};
  const NodePair t4{net.node("4"), net.node("t")};
  LogicalFlowPlan plan;
  LogicalFlow f;
  f.pair = st;
  f.condition = net.condition("s4_alive");
  f.reservation = 1.0;
  f.load = {{s4, 1.0}, {t4, 1.0}, {st, 0.5}};
  plan.flows.push_back(f);
  LogicalFlow empty = f;
  empty.reservation = 0.0;
  plan.flows.push_back(empty);
  const auto ls = widest_path_decompose(net, plan);
  ASSERT_EQ(ls.size(), 1u);
  EXPECT_EQ(ls[0].hops, (std::vector<std::string>{"s", "4", "t"}));
  EXPECT_EQ(ls[0].condition, "s4_alive");
  EXPECT_EQ(ls[0].src, "s");
  EXPECT_EQ(ls[0].dst, "t");

  // Equal width: the direct segment has fewer hops.
  plan.flows.resize(1);
  plan.flows[0].load[st] = 1.0;
  EXPECT_EQ(widest_path_decompose(net, plan)[0].hops, (std::vector<std::string>{"s", "t"}));
}

TEST(Realize, DecomposeSolvedFlows) {
  const Network net(fixtures::hint());
  LogicalFlowOptions o;
  o.failure.k = 2;
  const LogicalFlowResult res = solve_logical_flow(net, o);
  const auto ls = widest_path_decompose(net, res.flows);
  for (const LogicalSequence& q : ls) {
    EXPECT_EQ(q.hops.front(), q.src);
    EXPECT_EQ(q.hops.back(), q.dst);
    EXPECT_GE(q.hops.size(), 2u);
  }
  EXPECT_EQ(widest_path_decompose(net, res.flows).size(), ls.size());
}

}  // namespace
}  // namespace rte
