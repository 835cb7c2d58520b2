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

// Instance files, generators, bundled fixtures and CSV reports.

#ifndef RTE_HARNESS_H_
#define RTE_HARNESS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rte/net.h"
#include "rte/robust.h"

namespace rte {

inline constexpr const char* kInstanceSchema = "resilient-te/instance@1";
inline constexpr const char* kPlanSchema = "resilient-te/plan@1";

// Throws Error(kParse) on malformed JSON, a wrong schema tag or bad field
// types. Referential integrity is left to validate_instance.
NetworkInstance instance_from_json(const std::string& text);
std::string instance_to_json(const NetworkInstance& instance);
NetworkInstance load_instance(const std::string& path);
void save_instance(const std::string& path, const NetworkInstance& instance);

std::string plan_to_json(const Network& net, const ReservationPlan& plan);
ReservationPlan plan_from_json(const Network& net, const std::string& text);

// Gravity traffic matrix with degree weights, scaled so that the
// no-failure optimal MLU is drawn uniformly from [mlu_lo, mlu_hi].
std::vector<FlowDemand> generate_gravity_demands(const NetworkInstance& topology,
                                                 double mlu_lo, double mlu_hi,
                                                 uint64_t seed);

// Up to `count` simple paths from src to dst: link-disjoint shortest paths
// first, then least-overlap shortest paths. Ties go to the lexicographically
// smaller node-id sequence. Ids are "<src>-<dst>-<n>".
std::vector<Tunnel> select_tunnels(const NetworkInstance& topology,
                                   const std::string& src,
                                   const std::string& dst, int count);
// Replaces the tunnels of `instance` by `count` selected tunnels per
// demand pair.
NetworkInstance with_selected_tunnels(const NetworkInstance& instance, int count);

// Every link becomes "<id>.a" and "<id>.b" with half the capacity. Tunnels
// and conditions that named the old link now name "<id>.a".
NetworkInstance split_sublinks(const NetworkInstance& instance);

namespace fixtures {

// s-1-t, s-2-t, s-3-4-t, s-5-3-4-t; demand s->t of 3.
NetworkInstance four_tunnel(bool with_fourth_tunnel = true);
// s-u over three links of capacity 1/3, u-t over two links of capacity 1.
// All six s-t tunnels, one tunnel per link and the LS (s,u,t).
NetworkInstance parallel();
// Six s-t tunnels through relays 1..3 and 4, LS (s,4,t) conditioned on
// link s-4 being alive; demand s->t of 2.
NetworkInstance hint();
// Four-node ring A-B-C-D-A for the percentile example.
NetworkInstance flow_example();
// Triangle where f1 only has the direct link.
NetworkInstance cvar_topo();
// Reservation-matrix example: tunnels of one link each and LS (A,C,D),
// (A,D,B); `with_third` adds (D,A,B) and a D->B demand.
NetworkInstance realization(bool with_third = false);
// Hand-made LS plan for `realization`: every reservation 1, every scale 1.
ReservationPlan realization_plan(const Network& net);

}  // namespace fixtures

// Name and instance of every bundled fixture, in a fixed order.
std::vector<std::pair<std::string, NetworkInstance>> bundled_fixtures();

struct ReportRow {
  std::string model;
  int k = 0;
  std::string objective;
  double value = 0.0;
  double normalized = 0.0;  // value / worst-case optimum
};

std::vector<ReportRow> run_report(const Network& net,
                                  const std::vector<Model>& models,
                                  const std::vector<int>& ks,
                                  ObjectiveKind objective, Mode mode);
std::string report_csv(const std::vector<ReportRow>& rows);

}  // namespace rte

#endif  // RTE_HARNESS_H_
