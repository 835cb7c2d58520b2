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

// Failure polytopes over 0/1 indicators: x_e (link failed), y_l (tunnel
// failed), h_c (condition active) and g_s (shared-risk group failed). All
// indicators live in [0,1]; the rows below are the relaxation.

#ifndef RTE_FAILURE_SETS_H_
#define RTE_FAILURE_SETS_H_

#include <vector>

#include "rte/net.h"

namespace rte {

enum class IndicatorKind { kTunnel, kCondition, kLink, kGroup };

struct Indicator {
  IndicatorKind kind;
  int index;  // tunnel / condition / link index, or position in group list
};

struct PolytopeRow {
  std::vector<std::pair<int, double>> coefs;  // indicator position -> coef
  bool equality = false;                      // otherwise <=
  double rhs = 0.0;
  bool budget = false;
};

struct FailurePolytope {
  std::vector<Indicator> vars;
  std::vector<PolytopeRow> rows;
  int budget = 0;

  int find(IndicatorKind kind, int index) const;  // -1 when absent
  int add_var(IndicatorKind kind, int index);
  // Point in [0,1]^vars satisfying every row within `tol`.
  bool contains(const std::vector<double>& point, double tol = 1e-9) const;
};

// Shared-risk groups: each group is a dead-link-only Condition.
struct FailureSpec {
  int k = 1;
  std::vector<Condition> srlg_groups;
  int k_groups = 0;
  bool srlg() const { return !srlg_groups.empty(); }
};

enum class PolytopeKind { kFfc, kExact, kHint };

FailurePolytope build_ffc_polytope(const Network& net, int k);
FailurePolytope build_exact_polytope(const Network& net, int k);
FailurePolytope build_hint_polytope(const Network& net, int k,
                                    const std::vector<int>& conditions);
FailurePolytope build_srlg_polytope(const Network& net,
                                    const std::vector<Condition>& groups,
                                    int k_groups);

// Polytope restricted to the indicators one protected row depends on. Vars
// are laid out as y (tunnels, given order), h (conditions, given order),
// then x and g. For kFfc, `tunnels` should be one pair's tunnel set.
FailurePolytope build_restricted_polytope(const Network& net,
                                          PolytopeKind kind,
                                          const FailureSpec& spec,
                                          const std::vector<int>& tunnels,
                                          const std::vector<int>& conditions);

// Integral points of the restricted polytope projected on (y, h), one 0/1
// vector per point, duplicates removed, deterministic order.
std::vector<std::vector<char>> enumerate_restricted_points(
    const Network& net, PolytopeKind kind, const FailureSpec& spec,
    const std::vector<int>& tunnels, const std::vector<int>& conditions,
    double guard = 1e6);

// Link failure sets admitted by the spec: all subsets of size <= k, or
// unions of at most k_groups shared-risk groups.
std::vector<std::vector<int>> admissible_failure_sets(const Network& net,
                                                      const FailureSpec& spec,
                                                      double guard = 1e6);

struct TunnelFailurePattern {
  std::vector<char> tunnel_failed;     // by tunnel index
  std::vector<char> condition_active;  // aligned with the condition list
  std::vector<int> scenario;           // failed link indices
};

// One pattern per scenario of enumerate_scenarios(net, k).
std::vector<TunnelFailurePattern> enumerate_patterns(
    const Network& net, int k, const std::vector<int>& conditions,
    double guard = 1e6);

// Largest number of the given tunnels sharing one link.
int max_link_sharing(const Network& net, const std::vector<int>& tunnels);

}  // namespace rte

#endif  // RTE_FAILURE_SETS_H_
