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

#include <algorithm>
#include <random>
#include <set>

#include "rte/harness.h"
#include "rte/net.h"
#include "support/testlib.h"

namespace rte {
namespace {

std::set<std::string> codes(const NetworkInstance& in) {
  std::set<std::string> out;
  for (const Diagnostic& d : validate_instance(in)) out.insert(d.code);
  return out;
}

TEST(Validate, FixturesAreClean) {
  for (const auto& [name, in] : bundled_fixtures()) {
    EXPECT_TRUE(validate_instance(in).empty()) << name;
    EXPECT_NO_THROW(Network{in}) << name;
  }
}

TEST(Validate, ReportsStructuralErrors) {
  NetworkInstance in = fixtures::four_tunnel(true);
  in.tunnels[0].path = {"s-1", "2-t"};
  EXPECT_TRUE(codes(in).count("TUNNEL_DISCONTIGUOUS"));

  in = fixtures::four_tunnel(true);
  in.tunnels[1].path.push_back("nope");
  EXPECT_TRUE(codes(in).count("UNKNOWN_LINK"));

  in = fixtures::four_tunnel(true);
  in.links[0].capacity = 0.0;
  EXPECT_TRUE(codes(in).count("NONPOSITIVE_CAPACITY"));

  in = fixtures::four_tunnel(true);
  in.links.push_back(in.links[0]);
  EXPECT_TRUE(codes(in).count("DUPLICATE_LINK"));

  in = fixtures::four_tunnel(true);
  in.demands[0].demand = -1.0;
  EXPECT_TRUE(codes(in).count("NEGATIVE_DEMAND"));

  in = fixtures::hint();
  in.sequences[0].condition = "missing";
  EXPECT_TRUE(codes(in).count("UNKNOWN_CONDITION"));

  in = fixtures::hint();
  in.conditions[0].dead_links = {"s-4"};
  EXPECT_TRUE(codes(in).count("CONDITION_CONFLICT"));

  in = fixtures::parallel();
  in.sequences[0].hops = {"s", "u", "u", "t"};
  EXPECT_TRUE(codes(in).count("REPEATED_HOP"));

  in = fixtures::flow_example();
  in.links[0].fail_prob = 1.5;
  EXPECT_TRUE(codes(in).count("BAD_FAIL_PROB"));
}

TEST(Validate, NetworkThrowsWithEveryDiagnostic) {
  NetworkInstance in = fixtures::four_tunnel(true);
  in.links[0].u = "ghost";
  in.demands[0].demand = -2;
  try {
    Network net(in);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInstance);
    EXPECT_NE(std::string(e.what()).find("UNKNOWN_NODE"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("NEGATIVE_DEMAND"), std::string::npos);
  }
}

TEST(Network, Lookups) {
  const Network net(fixtures::four_tunnel(true));
  EXPECT_EQ(net.num_nodes(), 7);
  EXPECT_EQ(net.num_links(), 9);
  EXPECT_EQ(net.num_tunnels(), 4);
  EXPECT_EQ(net.node_id(net.node("t")), "t");
  EXPECT_THROW(net.node("zz"), Error);
  const int t4 = net.tunnel("T4");
  EXPECT_EQ(net.tunnel_links(t4).size(), 4u);
  std::vector<std::string> hops;
  for (int v : net.tunnel_nodes(t4)) hops.push_back(net.node_id(v));
  EXPECT_EQ(hops, (std::vector<std::string>{"s", "5", "3", "4", "t"}));
  const NodePair st{net.node("s"), net.node("t")};
  EXPECT_DOUBLE_EQ(net.demand(st), 3.0);
  EXPECT_EQ(net.tunnels_of(st).size(), 4u);
  EXPECT_EQ(net.demand_pairs(), std::vector<NodePair>{st});
}

TEST(Network, TunnelsAreDirectedLinksUndirected) {
  // T4 in the realization fixture runs D->A over the A-D link.
  const Network net(fixtures::realization(false));
  const int t4 = net.tunnel("T4");
  EXPECT_EQ(net.node_id(net.tunnel_pair(t4).src), "D");
  EXPECT_EQ(net.node_id(net.tunnel_pair(t4).dst), "A");
}

TEST(Scenarios, AliveAndConditions) {
  const Network net(fixtures::hint());
  const LinkMask none = make_mask(net, {});
  const LinkMask s4 = make_mask(net, {net.link("s-4")});
  EXPECT_TRUE(tunnel_alive(net, net.tunnel("T41"), none));
  EXPECT_FALSE(tunnel_alive(net, net.tunnel("T41"), s4));
  EXPECT_TRUE(tunnel_alive(net, net.tunnel("T1"), s4));
  EXPECT_TRUE(condition_active(net, 0, none));
  EXPECT_FALSE(condition_active(net, 0, s4));
  EXPECT_TRUE(sequence_active(net, 0, none));
  EXPECT_FALSE(sequence_active(net, 0, s4));
}

TEST(Scenarios, CountsAndOrder) {
  const Network net(fixtures::four_tunnel(true));
  EXPECT_DOUBLE_EQ(count_failure_sets(9, 0), 1);
  EXPECT_DOUBLE_EQ(count_failure_sets(9, 1), 10);
  EXPECT_DOUBLE_EQ(count_failure_sets(9, 2), 46);
  EXPECT_DOUBLE_EQ(count_failure_sets(3, 7), 8);
  const auto sets = enumerate_failure_sets(net, 2);
  ASSERT_EQ(sets.size(), 46u);
  EXPECT_TRUE(sets[0].empty());
  // Size first, then the id tuple.
  for (size_t i = 1; i < sets.size(); ++i) {
    auto ids = [&](const std::vector<int>& s) {
      std::vector<std::string> out;
      for (int e : s) out.push_back(net.link_id(e));
      return out;
    };
    if (sets[i - 1].size() == sets[i].size()) {
      EXPECT_LT(ids(sets[i - 1]), ids(sets[i]));
    } else {
      EXPECT_LT(sets[i - 1].size(), sets[i].size());
    }
  }
  EXPECT_THROW(enumerate_failure_sets(net, 2, 10), Error);
}

TEST(ScenariosProperty, AliveIsMonotone) {
  std::mt19937_64 rng(1);
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Network net(testing::random_instance(seed));
    for (int trial = 0; trial < 20; ++trial) {
      LinkMask a(net.num_links(), 0);
      for (char& v : a) v = rng() % 4 == 0;
      LinkMask b = a;
      b[rng() % net.num_links()] = 1;
      for (int l = 0; l < net.num_tunnels(); ++l) {
        if (!tunnel_alive(net, l, a)) EXPECT_FALSE(tunnel_alive(net, l, b));
      }
    }
  }
}

TEST(ScenariosProperty, EnumerationNests) {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const Network net(testing::random_instance(seed));
    for (int k = 1; k <= 3; ++k) {
      const auto small = enumerate_failure_sets(net, k - 1);
      const auto big = enumerate_failure_sets(net, k);
      const std::set<std::vector<int>> bigset(big.begin(), big.end());
      for (const auto& s : small) EXPECT_TRUE(bigset.count(s));
      if (k <= net.num_links()) EXPECT_GT(big.size(), small.size());
    }
  }
}

TEST(ScenariosProperty, EmptyConditionAlwaysActive) {
  NetworkInstance in = fixtures::hint();
  in.conditions.push_back({"always", {}, {}});
  const Network net(in);
  const int c = net.condition("always");
  for (const auto& failed : enumerate_failure_sets(net, 3)) {
    EXPECT_TRUE(condition_active(net, c, make_mask(net, failed)));
  }
}

TEST(Scenarios, DocumentForms) {
  const Network net(fixtures::four_tunnel(true));
  const Scenario s = make_scenario(net, {net.link("3-4")});
  EXPECT_EQ(s.failed_links, std::vector<std::string>{"3-4"});
  EXPECT_FALSE(tunnel_alive(net, net.instance().tunnels[2], s));
  EXPECT_TRUE(tunnel_alive(net, net.instance().tunnels[0], s));
  EXPECT_THROW(scenario_links(net, Scenario{{"bogus"}, std::nullopt}), Error);
}

}  // namespace
}  // namespace rte
