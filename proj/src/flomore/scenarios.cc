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

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "rte/flomore.h"

namespace rte {

double default_weibull_scale(double shape) {
  if (!(shape > 0.0)) throw Error(ErrorCode::kInvalidArgument, "shape must be > 0");
  // Median of Weibull(k, s) is s * ln(2)^(1/k).
  return 0.001 / std::pow(std::log(2.0), 1.0 / shape);
}

NetworkInstance sample_link_probs(const NetworkInstance& topology, double shape,
                                  double scale, uint64_t seed) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Weibull shape and scale must be > 0");
  }
  NetworkInstance out = topology;
  std::mt19937_64 rng(seed);
  std::weibull_distribution<double> dist(shape, scale);
  for (Link& l : out.links) {
    l.fail_prob = std::clamp(dist(rng), 1e-12, 0.5 - 1e-12);
  }
  return out;
}

std::vector<ProbScenario> enumerate_prob_scenarios(const Network& net, double cutoff,
                                                   double guard) {
  const std::vector<int>& order = net.links_by_id();
  const int n = net.num_links();
  std::vector<double> p(n);
  for (int e = 0; e < n; ++e) {
    const auto& fp = net.instance().links[e].fail_prob;
    if (!fp || *fp < 0.0 || *fp > 1.0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "link " + net.link_id(e) + " needs a fail_prob in [0,1]");
    }
    p[e] = *fp;
  }
  // best[i]: the most likely completion over links order[i..].
  std::vector<double> best(n + 1, 1.0);
  for (int i = n - 1; i >= 0; --i) {
    best[i] = best[i + 1] * std::max(p[order[i]], 1.0 - p[order[i]]);
  }
  std::vector<ProbScenario> out;
  std::vector<int> failed;
  std::function<void(int, double)> walk = [&](int i, double prob) {
    if (prob * best[i] < cutoff || prob == 0.0) return;
    if (i == n) {
      if (out.size() >= guard) {
        throw Error(ErrorCode::kScenarioBlowup,
                    "more than " + std::to_string(static_cast<long>(guard)) +
                        " probable scenarios");
      }
      ProbScenario s;
      s.failed = failed;
      s.prob = prob;
      out.push_back(std::move(s));
      return;
    }
    const int e = order[i];
    walk(i + 1, prob * (1.0 - p[e]));
    failed.push_back(e);
    walk(i + 1, prob * p[e]);
    failed.pop_back();
  };
  walk(0, 1.0);
  // By size, then by the link-id tuple.
  std::vector<int> rank(n);
  for (int i = 0; i < n; ++i) rank[order[i]] = i;
  auto key = [&](const ProbScenario& s) {
    std::vector<int> r;
    for (int e : s.failed) r.push_back(rank[e]);
    return r;
  };
  std::stable_sort(out.begin(), out.end(), [&](const ProbScenario& a, const ProbScenario& b) {
    if (a.failed.size() != b.failed.size()) return a.failed.size() < b.failed.size();
    return key(a) < key(b);
  });
  for (ProbScenario& s : out) std::sort(s.failed.begin(), s.failed.end());
  return out;
}

bool ProbabilisticInstance::connected(int f, int q) const {
  for (int l : net.tunnels_of(net.flow_pair(f))) {
    if (alive[q][l]) return true;
  }
  return false;
}

double auto_select_beta(const Network& net, const std::vector<ProbScenario>& scenarios) {
  double worst = 1.0;
  for (int f = 0; f < net.num_flows(); ++f) {
    double mass = 0.0;
    for (const ProbScenario& s : scenarios) {
      const LinkMask m = make_mask(net, s.failed);
      for (int l : net.tunnels_of(net.flow_pair(f))) {
        if (tunnel_alive(net, l, m)) {
          mass += s.prob;
          break;
        }
      }
    }
    worst = std::min(worst, mass);
  }
  double chosen = 0.0;
  for (double b : {0.9, 0.99, 0.999, 0.9999}) {
    if (worst >= b - kProbTol) chosen = b;
  }
  if (chosen == 0.0) {
    throw Error(ErrorCode::kInfeasibleTarget,
                "some flow is connected in less than 90% of the probability mass");
  }
  return chosen;
}

ProbabilisticInstance make_prob_instance(const Network& net, std::optional<double> beta) {
  ProbabilisticInstance pi{net, {}, 0.0, {}, {}, {}};
  const NetworkInstance& in = net.instance();
  bool listed = !in.scenarios.empty();
  for (const Scenario& s : in.scenarios) listed = listed && s.prob.has_value();
  if (listed) {
    for (const Scenario& s : in.scenarios) {
      ProbScenario ps;
      ps.failed = scenario_links(net, s);
      std::sort(ps.failed.begin(), ps.failed.end());
      ps.prob = *s.prob;
      pi.scenarios.push_back(std::move(ps));
    }
  } else {
    pi.scenarios = enumerate_prob_scenarios(net, in.scenario_cutoff.value_or(1e-6));
  }
  double total = 0.0;
  for (const ProbScenario& s : pi.scenarios) total += s.prob;
  if (total > 1.0 + 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "scenario probabilities sum above 1");
  }
  if (beta) {
    pi.beta = *beta;
  } else if (in.beta) {
    pi.beta = *in.beta;
  } else {
    pi.beta = auto_select_beta(net, pi.scenarios);
  }
  if (!(pi.beta > 0.0 && pi.beta < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "beta must lie in (0,1)");
  }
  for (const FlowDemand& f : in.demands) {
    pi.flow_beta.push_back(f.beta.value_or(pi.beta));
    pi.flow_threshold.push_back(f.loss_threshold.value_or(0.0));
  }
  for (const ProbScenario& s : pi.scenarios) {
    const LinkMask m = make_mask(net, s.failed);
    std::vector<char> row(net.num_tunnels());
    for (int l = 0; l < net.num_tunnels(); ++l) row[l] = tunnel_alive(net, l, m);
    pi.alive.push_back(std::move(row));
  }
  return pi;
}

LossGroups make_loss_groups(const ProbabilisticInstance& pinst,
                            const std::vector<std::vector<std::string>>& flow_sets) {
  const NetworkInstance& in = pinst.net.instance();
  std::map<std::string, int> by_id;
  for (int f = 0; f < pinst.net.num_flows(); ++f) by_id[in.demands[f].flow_id] = f;
  LossGroups g;
  g.of_flow.assign(pinst.net.num_flows(), -1);
  for (const auto& set : flow_sets) {
    std::vector<int> members;
    for (const std::string& id : set) {
      auto it = by_id.find(id);
      if (it == by_id.end()) throw Error(ErrorCode::kUnknownId, "unknown flow " + id);
      if (g.of_flow[it->second] >= 0) {
        throw Error(ErrorCode::kInvalidArgument, "flow " + id + " is in two flow sets");
      }
      g.of_flow[it->second] = g.size();
      members.push_back(it->second);
    }
    if (members.empty()) continue;
    g.members.push_back(std::move(members));
  }
  for (int f = 0; f < pinst.net.num_flows(); ++f) {
    if (g.of_flow[f] >= 0) continue;
    g.of_flow[f] = g.size();
    g.members.push_back({f});
  }
  for (const auto& members : g.members) {
    double b = 0.0, th = 1.0;
    for (int f : members) {
      b = std::max(b, pinst.flow_beta[f]);
      th = std::min(th, pinst.flow_threshold[f]);
    }
    g.beta.push_back(b);
    g.threshold.push_back(th);
  }
  return g;
}

}  // namespace rte
