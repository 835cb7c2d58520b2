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
#include <limits>
#include <numeric>

#include "rte/flomore.h"

namespace rte {
namespace {

std::vector<size_t> sorted_by_value(const std::vector<double>& values) {
  std::vector<size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  return idx;
}

void check_sizes(const std::vector<double>& values, const std::vector<double>& probs) {
  if (values.size() != probs.size()) {
    throw Error(ErrorCode::kInvalidArgument, "values and probabilities differ in length");
  }
}

}  // namespace

double percentile(const std::vector<double>& values, const std::vector<double>& probs,
                  double beta) {
  check_sizes(values, probs);
  double mass = 0.0;
  for (size_t i : sorted_by_value(values)) {
    mass += probs[i];
    if (mass >= beta - kProbTol) return values[i];
  }
  throw Error(ErrorCode::kInfeasibleTarget,
              "scenario mass " + std::to_string(mass) + " is below beta " +
                  std::to_string(beta));
}

double cvar(const std::vector<double>& values, const std::vector<double>& probs,
            double beta) {
  check_sizes(values, probs);
  if (!(beta < 1.0)) throw Error(ErrorCode::kInvalidArgument, "beta must be < 1");
  // Convex and piecewise linear in eta with breaks at the values.
  double best = values.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (double eta : values) {
    double tail = 0.0;
    for (size_t i = 0; i < values.size(); ++i) {
      tail += probs[i] * std::max(0.0, values[i] - eta);
    }
    best = std::min(best, eta + tail / (1.0 - beta));
  }
  return best;
}

LossReport percentile_analysis(const ProbabilisticInstance& pinst,
                               const std::vector<std::vector<double>>& loss) {
  const int nf = pinst.net.num_flows();
  const int nq = pinst.num_scenarios();
  if (static_cast<int>(loss.size()) != nf) {
    throw Error(ErrorCode::kInvalidArgument, "loss matrix needs one row per flow");
  }
  std::vector<double> probs(nq);
  for (int q = 0; q < nq; ++q) probs[q] = pinst.scenarios[q].prob;
  LossReport r;
  r.scen_loss.assign(nq, 0.0);
  for (int f = 0; f < nf; ++f) {
    if (static_cast<int>(loss[f].size()) != nq) {
      throw Error(ErrorCode::kInvalidArgument, "loss row needs one entry per scenario");
    }
    for (int q = 0; q < nq; ++q) r.scen_loss[q] = std::max(r.scen_loss[q], loss[f][q]);
    r.flow_loss.push_back(percentile(loss[f], probs, pinst.flow_beta[f]));
    r.max_flow_pct_loss = std::max(r.max_flow_pct_loss, r.flow_loss.back());
  }
  r.scen_pct_loss = nf == 0 ? 0.0 : percentile(r.scen_loss, probs, pinst.beta);
  return r;
}

std::vector<std::vector<double>> losses_from_allocation(
    const ProbabilisticInstance& pinst, const std::vector<std::vector<double>>& x) {
  const Network& net = pinst.net;
  const int nq = pinst.num_scenarios();
  std::vector<std::vector<double>> loss(net.num_flows(), std::vector<double>(nq, 0.0));
  for (int q = 0; q < nq; ++q) {
    for (int f = 0; f < net.num_flows(); ++f) {
      const NodePair p = net.flow_pair(f);
      const double d = net.demand(p);
      if (d <= 0.0) continue;
      double bw = 0.0;
      for (int l : net.tunnels_of(p)) {
        if (pinst.alive[q][l]) bw += x[q][l];
      }
      loss[f][q] = std::clamp(1.0 - bw / d, 0.0, 1.0);
      if (loss[f][q] < 1e-9) loss[f][q] = 0.0;
    }
  }
  return loss;
}

}  // namespace rte
