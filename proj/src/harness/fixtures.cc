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

#include "rte/harness.h"
#include "rte/oracle.h"

namespace rte {
namespace fixtures {
namespace {

Link link(std::string u, std::string v, double cap,
          std::optional<double> prob = std::nullopt) {
  Link l;
  l.id = u + "-" + v;
  l.u = std::move(u);
  l.v = std::move(v);
  l.capacity = cap;
  l.fail_prob = prob;
  return l;
}

Tunnel tunnel(std::string id, std::string src, std::string dst,
              std::vector<std::string> path) {
  return {std::move(id), std::move(src), std::move(dst), std::move(path)};
}

FlowDemand flow(std::string id, std::string src, std::string dst, double d) {
  FlowDemand f;
  f.flow_id = std::move(id);
  f.src = std::move(src);
  f.dst = std::move(dst);
  f.demand = d;
  return f;
}

}  // namespace

NetworkInstance four_tunnel(bool with_fourth_tunnel) {
  NetworkInstance in;
  in.name = with_fourth_tunnel ? "four_tunnel" : "four_tunnel_3";
  in.nodes = {"s", "1", "2", "3", "4", "5", "t"};
  in.links = {link("s", "1", 1),   link("1", "t", 1),   link("s", "2", 1),
              link("2", "t", 1),   link("s", "3", 0.5), link("3", "4", 1),
              link("4", "t", 1),   link("s", "5", 0.5), link("5", "3", 0.5)};
  in.tunnels = {tunnel("T1", "s", "t", {"s-1", "1-t"}),
                tunnel("T2", "s", "t", {"s-2", "2-t"}),
                tunnel("T3", "s", "t", {"s-3", "3-4", "4-t"})};
  if (with_fourth_tunnel) {
    in.tunnels.push_back(tunnel("T4", "s", "t", {"s-5", "5-3", "3-4", "4-t"}));
  }
  // Large enough that the throughput cap never binds for k >= 1.
  in.demands = {flow("f", "s", "t", 3)};
  return in;
}

NetworkInstance parallel() {
  NetworkInstance in;
  in.name = "parallel";
  in.nodes = {"s", "u", "t"};
  for (int i = 1; i <= 3; ++i) {
    Link l = link("s", "u", 1.0 / 3);
    l.id = "e" + std::to_string(i);
    in.links.push_back(l);
  }
  for (int i = 4; i <= 5; ++i) {
    Link l = link("u", "t", 1.0);
    l.id = "e" + std::to_string(i);
    in.links.push_back(l);
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 4; j <= 5; ++j) {
      const std::string a = "e" + std::to_string(i), b = "e" + std::to_string(j);
      in.tunnels.push_back(tunnel("T" + std::to_string(i) + std::to_string(j),
                                  "s", "t", {a, b}));
    }
  }
  for (int i = 1; i <= 3; ++i) {
    const std::string e = "e" + std::to_string(i);
    in.tunnels.push_back(tunnel("su." + e, "s", "u", {e}));
  }
  for (int j = 4; j <= 5; ++j) {
    const std::string e = "e" + std::to_string(j);
    in.tunnels.push_back(tunnel("ut." + e, "u", "t", {e}));
  }
  in.sequences = {{"L", "s", "t", {"s", "u", "t"}, ""}};
  in.demands = {flow("f", "s", "t", 1)};
  return in;
}

NetworkInstance hint() {
  NetworkInstance in;
  in.name = "hint";
  in.nodes = {"s", "1", "2", "3", "4", "t"};
  in.links = {link("s", "1", 0.5), link("s", "2", 0.5), link("s", "3", 0.5),
              link("s", "4", 0.5), link("4", "1", 0.5), link("4", "2", 0.5),
              link("4", "3", 0.5), link("1", "t", 1),   link("2", "t", 1),
              link("3", "t", 1)};
  for (const char* r : {"1", "2", "3"}) {
    const std::string v = r;
    in.tunnels.push_back(tunnel("T" + v, "s", "t", {"s-" + v, v + "-t"}));
  }
  for (const char* r : {"1", "2", "3"}) {
    const std::string v = r;
    in.tunnels.push_back(
        tunnel("T4" + v, "s", "t", {"s-4", "4-" + v, v + "-t"}));
  }
  in.tunnels.push_back(tunnel("S4", "s", "4", {"s-4"}));
  for (const char* r : {"1", "2", "3"}) {
    const std::string v = r;
    in.tunnels.push_back(tunnel("S" + v + "4", "s", "4", {"s-" + v, "4-" + v}));
  }
  for (const char* r : {"1", "2", "3"}) {
    const std::string v = r;
    in.tunnels.push_back(tunnel("U" + v, "4", "t", {"4-" + v, v + "-t"}));
  }
  in.conditions = {{"s4_alive", {"s-4"}, {}}};
  in.sequences = {{"L", "s", "t", {"s", "4", "t"}, "s4_alive"}};
  in.demands = {flow("f", "s", "t", 2)};
  return in;
}

NetworkInstance flow_example() {
  NetworkInstance in;
  in.name = "flow_example";
  in.nodes = {"A", "B", "C", "D"};
  in.links = {link("A", "B", 1, 0.001), link("B", "C", 1, 0.001),
              link("C", "D", 1, 0.001), link("A", "D", 1, 0.01)};
  in.tunnels = {tunnel("ABC", "A", "C", {"A-B", "B-C"}),
                tunnel("ADC", "A", "C", {"A-D", "C-D"}),
                tunnel("AD", "A", "D", {"A-D"}),
                tunnel("ABCD", "A", "D", {"A-B", "B-C", "C-D"})};
  in.demands = {flow("f1", "A", "C", 1), flow("f2", "A", "D", 1)};
  in.beta = 0.99;
  return in;
}

NetworkInstance cvar_topo() {
  NetworkInstance in;
  in.name = "cvar_topo";
  in.nodes = {"A", "B", "C"};
  in.links = {link("A", "B", 1, 0.01), link("A", "C", 1, 0.01),
              link("B", "C", 1, 0.01)};
  in.tunnels = {tunnel("AB", "A", "B", {"A-B"}),
                tunnel("AC", "A", "C", {"A-C"}),
                tunnel("ABC", "A", "C", {"A-B", "B-C"})};
  in.demands = {flow("f1", "A", "B", 1), flow("f2", "A", "C", 1)};
  in.beta = 0.99;
  // Keep every scenario so the failure mass of A-B is exactly 1%.
  in.scenario_cutoff = 0.0;
  return in;
}

NetworkInstance realization(bool with_third) {
  NetworkInstance in;
  in.name = with_third ? "realization_l3" : "realization";
  in.nodes = {"A", "B", "C", "D"};
  in.links = {link("A", "C", 1), link("C", "D", 1), link("A", "D", 2),
              link("D", "B", 1), link("A", "B", 1)};
  in.tunnels = {tunnel("T1", "A", "C", {"A-C"}), tunnel("T2", "C", "D", {"C-D"}),
                tunnel("T3", "A", "D", {"A-D"}), tunnel("T4", "D", "A", {"A-D"}),
                tunnel("T5", "D", "B", {"D-B"}), tunnel("T6", "A", "B", {"A-B"})};
  in.sequences = {{"L1", "A", "D", {"A", "C", "D"}, ""},
                  {"L2", "A", "B", {"A", "D", "B"}, ""}};
  in.demands = {flow("f1", "A", "B", 1)};
  if (with_third) {
    in.sequences.push_back({"L3", "D", "B", {"D", "A", "B"}, ""});
    in.demands.push_back(flow("f2", "D", "B", 1));
  }
  return in;
}

ReservationPlan realization_plan(const Network& net) {
  ReservationPlan plan;
  plan.model = Model::kLs;
  plan.tunnel_res.assign(net.num_tunnels(), 1.0);
  plan.sequence_res.assign(net.num_sequences(), 1.0);
  for (NodePair p : net.demand_pairs()) plan.z[p] = 1.0;
  return plan;
}

}  // namespace fixtures

std::vector<std::pair<std::string, NetworkInstance>> bundled_fixtures() {
  std::vector<std::pair<std::string, NetworkInstance>> out;
  for (NetworkInstance in :
       {fixtures::four_tunnel(true), fixtures::four_tunnel(false),
        fixtures::parallel(), generalized_family(3, 2, 2),
        generalized_family(9, 3, 3), fixtures::hint(), fixtures::flow_example(),
        fixtures::cvar_topo(), fixtures::realization(false),
        fixtures::realization(true)}) {
    out.emplace_back(in.name, std::move(in));
  }
  return out;
}

}  // namespace rte
