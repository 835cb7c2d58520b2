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

// Per-flow percentile loss under probabilistic link failures: the direct
// MIP, its Benders decomposition, CVaR baselines and percentile analysis.

#ifndef RTE_FLOMORE_H_
#define RTE_FLOMORE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "rte/lp.h"
#include "rte/net.h"

namespace rte {

// Slack on every probability-mass comparison (availability rows and
// percentile lookups), so a mass that is 0.99 in exact arithmetic meets
// beta = 0.99.
inline constexpr double kProbTol = 1e-9;

inline constexpr double kDefaultWeibullShape = 0.8;
// Scale that puts the median at 0.001 for the given shape.
double default_weibull_scale(double shape = kDefaultWeibullShape);

// I.i.d. Weibull draws clamped into (0, 0.5), one per link.
NetworkInstance sample_link_probs(const NetworkInstance& topology, double shape,
                                  double scale, uint64_t seed);

struct ProbScenario {
  std::vector<int> failed;  // link indices, ascending
  double prob = 0.0;
};

// Every failure set with independent-failure probability >= cutoff, by size
// and then link-id order. Links need fail_prob. Throws kScenarioBlowup past
// `guard` scenarios.
std::vector<ProbScenario> enumerate_prob_scenarios(const Network& net,
                                                   double cutoff = 1e-6,
                                                   double guard = 1e6);

struct ProbabilisticInstance {
  Network net;
  std::vector<ProbScenario> scenarios;
  double beta = 0.99;
  std::vector<double> flow_beta;       // by flow index
  std::vector<double> flow_threshold;  // by flow index, 0 when unset
  std::vector<std::vector<char>> alive;  // [scenario][tunnel]

  int num_scenarios() const { return static_cast<int>(scenarios.size()); }
  // Whether flow f has a live tunnel in scenario q.
  bool connected(int f, int q) const;
};

// Scenarios come from the instance when it lists them with probabilities,
// otherwise from enumerate_prob_scenarios with the instance cutoff (default
// 1e-6). beta: the argument, else the instance's, else auto_select_beta.
ProbabilisticInstance make_prob_instance(const Network& net,
                                         std::optional<double> beta = std::nullopt);

// Largest of 0.9, 0.99, 0.999, 0.9999 for which every flow is connected in
// scenarios totalling at least that mass. Throws kInfeasibleTarget when even
// 0.9 fails.
double auto_select_beta(const Network& net, const std::vector<ProbScenario>& scenarios);

// Flows that share one loss variable. Flows outside every listed set get a
// group of their own. A group takes the largest beta and the smallest
// threshold of its members.
struct LossGroups {
  std::vector<std::vector<int>> members;
  std::vector<int> of_flow;
  std::vector<double> beta;
  std::vector<double> threshold;

  int size() const { return static_cast<int>(members.size()); }
};
LossGroups make_loss_groups(const ProbabilisticInstance& pinst,
                            const std::vector<std::vector<std::string>>& flow_sets = {});

// A routing: bandwidth per scenario and tunnel, and the loss of every flow
// in every scenario.
struct ProbRouting {
  std::vector<std::vector<double>> x;     // [scenario][tunnel]
  std::vector<std::vector<double>> loss;  // [flow][scenario]
};

struct LossReport {
  std::vector<double> flow_loss;  // FlowLoss(f, beta_f)
  double max_flow_pct_loss = 0.0;
  std::vector<double> scen_loss;  // max over flows, per scenario
  double scen_pct_loss = 0.0;     // at the global beta
};

// Smallest v with sum of p over {values <= v} >= beta - kProbTol. Throws
// kInfeasibleTarget when the total mass is short.
double percentile(const std::vector<double>& values, const std::vector<double>& probs,
                  double beta);
// min over eta of eta + sum p (v - eta)^+ / (1 - beta).
double cvar(const std::vector<double>& values, const std::vector<double>& probs,
            double beta);

LossReport percentile_analysis(const ProbabilisticInstance& pinst,
                               const std::vector<std::vector<double>>& loss);
// Losses implied by per-scenario tunnel bandwidth: flows of a pair share
// the pair's live bandwidth and see max(0, 1 - bandwidth / demand).
std::vector<std::vector<double>> losses_from_allocation(
    const ProbabilisticInstance& pinst, const std::vector<std::vector<double>>& x);

struct FloMoreOptions {
  std::vector<std::vector<std::string>> flow_sets;
  lp::MipOptions mip;
};

struct FloMoreResult {
  double alpha = 0.0;  // optimal objective
  LossGroups groups;
  std::vector<std::vector<char>> z;  // [group][scenario]
  ProbRouting routing;
  LossReport report;
};

FloMoreResult solve_direct_mip(const ProbabilisticInstance& pinst,
                               const FloMoreOptions& opts = {});

// Per-scenario LP minimizing the largest flow loss, ties broken by total
// loss.
FloMoreResult minmax_baseline(const ProbabilisticInstance& pinst);

// Affine lower bound on the scenario's optimal alpha as a function of its
// z column: constant + sum_g coeff[g] * z_g.
struct Cut {
  int scenario = 0;
  double constant = 0.0;
  std::vector<double> coeff;

  double eval(const std::vector<char>& zcol) const;
};

struct SubproblemResult {
  double alpha = 0.0;
  Cut cut;
  std::vector<double> x;     // by tunnel
  std::vector<double> loss;  // by group, after minimizing total loss
};

SubproblemResult benders_subproblem(const ProbabilisticInstance& pinst,
                                    const LossGroups& groups, int q,
                                    const std::vector<char>& zcol);

struct MasterOptions {
  // Start point: z = 1 wherever the group is connected. Ignores cuts.
  bool heuristic_start = false;
  // Hamming ball around `previous`; needs `previous`.
  std::optional<int> hamming_limit;
  const std::vector<std::vector<char>>* previous = nullptr;
  // z = 0 where the group is disconnected.
  bool fix_disconnected = true;
  // Entries pinned to a value: (group, scenario, value).
  std::vector<std::tuple<int, int, int>> fixed;
  lp::MipOptions mip;
};

struct MasterResult {
  std::vector<std::vector<char>> z;
  double bound = 0.0;
};

// Throws kInfeasibleTarget naming a flow whose connected mass is below its
// beta.
MasterResult benders_master(const ProbabilisticInstance& pinst, const LossGroups& groups,
                            const std::vector<Cut>& cuts, const MasterOptions& opts);

struct BendersOptions {
  int max_iterations = 20;
  std::vector<std::vector<std::string>> flow_sets;
  // Default 0.1 * |groups| * |non-perfect scenarios|; doubled after an
  // iteration without improvement. Negative turns the ball off.
  std::optional<int> hamming_limit;
  bool prune_perfect = true;
  double gap = 1e-7;
  lp::MipOptions mip;
};

struct BendersState {
  std::vector<Cut> cuts;
  double incumbent = 1.0;
  double lower_bound = 0.0;
  int iterations = 0;
  std::vector<double> incumbent_history;
  std::vector<double> bound_history;
  int perfect_scenarios = 0;
};

struct BendersResult {
  FloMoreResult best;
  BendersState state;
};

BendersResult benders_run(const ProbabilisticInstance& pinst,
                          const BendersOptions& opts = {});

enum class CvarVariant { kFlowAdaptive, kFlowStatic, kScenStatic };
const char* cvar_variant_name(CvarVariant v);
CvarVariant parse_cvar_variant(const std::string& s);

struct CvarResult {
  double objective = 0.0;  // the LP's CVaR value
  double max_flow_cvar = 0.0;  // recomputed from the routing's losses
  ProbRouting routing;
  LossReport report;
};

CvarResult solve_cvar(const ProbabilisticInstance& pinst, CvarVariant variant);

}  // namespace rte

#endif  // RTE_FLOMORE_H_
