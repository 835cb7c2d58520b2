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

#include <map>
#include <set>

#include "rte/harness.h"
#include "rte/oracle.h"
#include "support/testlib.h"

namespace rte {
namespace {

NetworkInstance topology_of(NetworkInstance in) {
  in.demands.clear();
  in.tunnels.clear();
  in.sequences.clear();
  in.conditions.clear();
  in.scenarios.clear();
  return in;
}

TEST(Json, FixturesRoundTrip) {
  for (const auto& [name, in] : bundled_fixtures()) {
    const std::string text = instance_to_json(in);
    EXPECT_EQ(instance_from_json(text), in) << name;
    EXPECT_EQ(instance_to_json(instance_from_json(text)), text) << name;
  }
}

TEST(Json, RandomRoundTrip) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const NetworkInstance in = testing::random_prob_instance(seed);
    EXPECT_EQ(instance_from_json(instance_to_json(in)), in) << seed;
  }
}

TEST(Json, Errors) {
  for (const char* bad : {"{", "[]", R"({"nodes": 3})", R"({"links": [{"id": 1}]})"}) {
    try {
      instance_from_json(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kParse) << bad;
    }
  }
  EXPECT_THROW(load_instance("/nonexistent/instance.json"), Error);
}

TEST(Json, PlanRoundTrip) {
  const Network net(fixtures::hint());
  const ReservationPlan plan = solve_robust(net, testing::options(Model::kCls, 2));
  const ReservationPlan back = plan_from_json(net, plan_to_json(net, plan));
  EXPECT_EQ(back.model, plan.model);
  EXPECT_EQ(back.failure.k, 2);
  ASSERT_EQ(back.tunnel_res.size(), plan.tunnel_res.size());
  for (size_t i = 0; i < plan.tunnel_res.size(); ++i) {
    EXPECT_DOUBLE_EQ(back.tunnel_res[i], plan.tunnel_res[i]);
  }
  EXPECT_EQ(back.sequence_res, plan.sequence_res);
  EXPECT_EQ(back.z, plan.z);
  EXPECT_DOUBLE_EQ(back.objective_value, plan.objective_value);
  // Another instance does not have these tunnels.
  EXPECT_THROW(plan_from_json(Network(fixtures::parallel()), plan_to_json(net, plan)), Error);
}

TEST(Gravity, SymmetricDeterministicAndScaled) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const NetworkInstance topo = topology_of(testing::random_instance(seed));
    const auto a = generate_gravity_demands(topo, 0.4, 0.8, seed);
    const auto b = generate_gravity_demands(topo, 0.4, 0.8, seed);
    EXPECT_EQ(a, b);
    const size_t n = topo.nodes.size();
    ASSERT_EQ(a.size(), n * (n - 1));
    std::map<std::pair<std::string, std::string>, double> d;
    for (const FlowDemand& f : a) {
      EXPECT_EQ(f.flow_id, f.src + "-" + f.dst);
      EXPECT_GT(f.demand, 0.0);
      d[{f.src, f.dst}] = f.demand;
    }
    for (const auto& [st, v] : d) EXPECT_DOUBLE_EQ(v, (d.at({st.second, st.first})));
    NetworkInstance in = topo;
    in.demands = a;
    // Demand scale is 1 / MLU.
    const double z = solve_mcf(Network(in), std::vector<int>{}, ObjectiveKind::kDemandScale)
                         .objective;
    EXPECT_GE(1.0 / z, 0.4 - 1e-7) << seed;
    EXPECT_LE(1.0 / z, 0.8 + 1e-7) << seed;
  }
  const NetworkInstance topo = topology_of(fixtures::four_tunnel(true));
  const auto fixed = generate_gravity_demands(topo, 0.5, 0.5, 9);
  NetworkInstance in = topo;
  in.demands = fixed;
  EXPECT_NEAR(solve_mcf(Network(in), std::vector<int>{}, ObjectiveKind::kDemandScale).objective,
              2.0, 1e-7);
  EXPECT_THROW(generate_gravity_demands(topo, 0.0, 1.0, 1), Error);
  EXPECT_THROW(generate_gravity_demands(topo, 0.9, 0.1, 1), Error);
  NetworkInstance split = topo;
  split.nodes.push_back("island");
  EXPECT_THROW(generate_gravity_demands(split, 0.5, 0.6, 1), Error);
}

std::vector<std::string> hops(const NetworkInstance& in, const Tunnel& t) {
  std::vector<std::string> out;
  NetworkInstance with = in;
  with.tunnels = {t};
  const Network n2(with);
  for (int v : n2.tunnel_nodes(0)) out.push_back(n2.node_id(v));
  return out;
}

TEST(SelectTunnels, FourTunnelTopology) {
  const NetworkInstance topo = topology_of(fixtures::four_tunnel(true));
  const auto ts = select_tunnels(topo, "s", "t", 4);
  ASSERT_EQ(ts.size(), 4u);
  EXPECT_EQ(ts[0].id, "s-t-1");
  EXPECT_EQ(hops(topo, ts[0]), (std::vector<std::string>{"s", "1", "t"}));
  EXPECT_EQ(hops(topo, ts[1]), (std::vector<std::string>{"s", "2", "t"}));
  EXPECT_EQ(hops(topo, ts[2]), (std::vector<std::string>{"s", "3", "4", "t"}));
  EXPECT_EQ(hops(topo, ts[3]), (std::vector<std::string>{"s", "5", "3", "4", "t"}));
  // Only four simple paths exist.
  EXPECT_EQ(select_tunnels(topo, "s", "t", 9).size(), 4u);
  EXPECT_TRUE(select_tunnels(topo, "s", "t", 0).empty());
  EXPECT_THROW(select_tunnels(topo, "s", "zz", 2), Error);
}

TEST(SelectTunnels, ProducesValidDistinctPaths) {
  for (uint64_t seed = 1; seed <= 15; ++seed) {
    const NetworkInstance in = testing::random_instance(seed);
    const NetworkInstance re = with_selected_tunnels(in, 3);
    EXPECT_TRUE(validate_instance(re).empty()) << seed;
    const Network net(re);
    std::set<std::pair<NodePair, std::vector<int>>> seen;
    for (int l = 0; l < net.num_tunnels(); ++l) {
      EXPECT_TRUE(seen.insert({net.tunnel_pair(l), net.tunnel_links(l)}).second) << seed;
    }
    for (NodePair p : net.demand_pairs()) {
      EXPECT_GE(net.tunnels_of(p).size(), 1u);
      EXPECT_LE(net.tunnels_of(p).size(), 3u);
    }
  }
}

TEST(Sublinks, SplitHalvesCapacity) {
  const NetworkInstance in = fixtures::hint();
  const NetworkInstance out = split_sublinks(in);
  EXPECT_TRUE(validate_instance(out).empty());
  ASSERT_EQ(out.links.size(), 2 * in.links.size());
  const Network net(out);
  EXPECT_DOUBLE_EQ(net.capacity(net.link("s-4.a")), 0.25);
  EXPECT_DOUBLE_EQ(net.capacity(net.link("s-4.b")), 0.25);
  EXPECT_EQ(out.tunnels[0].path, (std::vector<std::string>{"s-1.a", "1-t.a"}));
  EXPECT_EQ(out.conditions[0].alive_links, std::vector<std::string>{"s-4.a"});
  // Parallel halves carry what the link did.
  EXPECT_NEAR(worst_case_optimal(net, 0, ObjectiveKind::kThroughput).value,
              worst_case_optimal(Network(in), 0, ObjectiveKind::kThroughput).value, 1e-9);
}

TEST(Report, NormalizedByOracle) {
  const Network net(fixtures::four_tunnel(true));
  const std::vector<Model> models = {Model::kFfc, Model::kFfcPlus};
  const auto rows = run_report(net, models, {1, 2}, ObjectiveKind::kThroughput, Mode::kDual);
  ASSERT_EQ(rows.size(), 4u);
  for (const ReportRow& r : rows) {
    const double best = worst_case_optimal(net, r.k, ObjectiveKind::kThroughput).value;
    EXPECT_NEAR(r.normalized, r.value / best, 1e-9);
    EXPECT_GE(r.normalized, -1e-9);
    EXPECT_LE(r.normalized, 1.0 + 1e-9);
  }
  EXPECT_EQ(rows[0].model, "ffc");
  EXPECT_NEAR(rows[0].normalized, 0.5, 1e-9);
  const std::string csv = report_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "model,k,objective,value,normalized");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST(Report, ZeroOverZeroIsOne) {
  // k=3 cuts s-1, s-2 and 3-4: nothing survives for anyone.
  const Network net(fixtures::four_tunnel(true));
  const auto rows = run_report(net, {Model::kFfcPlus}, {3}, ObjectiveKind::kThroughput,
                               Mode::kDual);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(rows[0].value, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(rows[0].normalized, 1.0);
}

}  // namespace
}  // namespace rte
