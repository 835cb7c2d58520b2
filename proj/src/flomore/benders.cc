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
#include <limits>

#include "internal.h"
#include "rte/parallel.h"

namespace rte {

MasterResult benders_master(const ProbabilisticInstance& pinst, const LossGroups& groups,
                            const std::vector<Cut>& cuts, const MasterOptions& opts) {
  detail::check_availability(pinst, groups);
  const int ng = groups.size();
  const int nq = pinst.num_scenarios();
  MasterResult out;
  if (opts.heuristic_start) {
    out.z.assign(ng, std::vector<char>(nq, 0));
    for (int g = 0; g < ng; ++g) {
      for (int q = 0; q < nq; ++q) out.z[g][q] = detail::group_connected(pinst, groups, g, q);
    }
    for (auto [g, q, v] : opts.fixed) out.z[g][q] = v != 0;
    for (const Cut& c : cuts) {
      std::vector<char> zcol(ng);
      for (int g = 0; g < ng; ++g) zcol[g] = out.z[g][c.scenario];
      out.bound = std::max(out.bound, c.eval(zcol));
    }
    return out;
  }

  lp::LinearProgram lp;
  const int theta = lp.add_variable("theta");
  std::vector<std::vector<int>> z(ng, std::vector<int>(nq));
  for (int g = 0; g < ng; ++g) {
    for (int q = 0; q < nq; ++q) {
      z[g][q] = lp.add_binary("z." + std::to_string(g) + "." + std::to_string(q));
      if (opts.fix_disconnected && !detail::group_connected(pinst, groups, g, q)) {
        lp.set_bounds(z[g][q], 0.0, 0.0);
      } else if (detail::forced_on(pinst, groups, g, q)) {
        lp.set_bounds(z[g][q], 1.0, 1.0);
      }
    }
  }
  for (auto [g, q, v] : opts.fixed) {
    if (g < 0 || g >= ng || q < 0 || q >= nq) {
      throw Error(ErrorCode::kInvalidArgument, "fixed entry out of range");
    }
    lp.set_bounds(z[g][q], v ? 1.0 : 0.0, v ? 1.0 : 0.0);
  }
  for (const Cut& c : cuts) {
    lp::LinExpr row;
    row.add(theta, 1.0);
    for (int g = 0; g < ng; ++g) row.add(z[g][c.scenario], -c.coeff[g]);
    lp.add_row(row, lp::Sense::kGe, c.constant);
  }
  for (int g = 0; g < ng; ++g) {
    lp::LinExpr avail;
    for (int q = 0; q < nq; ++q) avail.add(z[g][q], pinst.scenarios[q].prob);
    lp.add_row(avail, lp::Sense::kGe, groups.beta[g] - kProbTol);
  }
  if (opts.hamming_limit) {
    if (!opts.previous) {
      throw Error(ErrorCode::kInvalidArgument, "Hamming limit needs a previous z");
    }
    lp::LinExpr row;
    double ones = 0.0;
    for (int g = 0; g < ng; ++g) {
      for (int q = 0; q < nq; ++q) {
        if ((*opts.previous)[g][q]) {
          row.add(z[g][q], -1.0);
          ones += 1.0;
        } else {
          row.add(z[g][q], 1.0);
        }
      }
    }
    lp.add_row(row, lp::Sense::kLe, *opts.hamming_limit - ones, "hamming");
  }
  lp.set_objective(lp::ObjSense::kMin, lp::LinExpr().add(theta, 1.0));
  const lp::Solution sol = lp::solve_mip(lp, opts.mip);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kInternalModelError,
                std::string("Benders master is ") + lp::status_name(sol.status));
  }
  out.bound = std::max(0.0, sol.objective);
  out.z.assign(ng, std::vector<char>(nq, 0));
  for (int g = 0; g < ng; ++g) {
    for (int q = 0; q < nq; ++q) out.z[g][q] = sol.x[z[g][q]] > 0.5;
  }
  return out;
}

namespace {

// Largest percentile loss above the flow's threshold.
double over_threshold(const ProbabilisticInstance& pinst, const LossReport& r) {
  double worst = 0.0;
  for (size_t f = 0; f < r.flow_loss.size(); ++f) {
    worst = std::max(worst, r.flow_loss[f] - pinst.flow_threshold[f]);
  }
  return worst;
}

}  // namespace

BendersResult benders_run(const ProbabilisticInstance& pinst, const BendersOptions& opts) {
  if (opts.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_iterations must be >= 1");
  }
  const LossGroups groups = make_loss_groups(pinst, opts.flow_sets);
  detail::check_availability(pinst, groups);
  const int ng = groups.size();
  const int nq = pinst.num_scenarios();

  // Scenarios that carry every flow in full have alpha = 0 for any z and
  // only produce the trivial cut.
  std::vector<char> perfect(nq, 0);
  std::vector<SubproblemResult> cached(nq);
  if (opts.prune_perfect) {
    parallel_for(nq, [&](size_t q) {
      cached[q] = benders_subproblem(pinst, groups, static_cast<int>(q),
                                     std::vector<char>(ng, 1));
      perfect[q] = std::all_of(cached[q].loss.begin(), cached[q].loss.end(),
                               [](double l) { return l == 0.0; });
    });
  }
  std::vector<int> active;
  for (int q = 0; q < nq; ++q) {
    if (!perfect[q]) active.push_back(q);
  }

  BendersResult out;
  BendersState& st = out.state;
  st.perfect_scenarios = nq - static_cast<int>(active.size());
  long hamming = opts.hamming_limit.value_or(static_cast<int>(
      std::max(1.0, std::ceil(0.1 * ng * static_cast<double>(active.size())))));
  const long entries = static_cast<long>(ng) * nq;

  MasterOptions start;
  start.heuristic_start = true;
  std::vector<std::vector<char>> z = benders_master(pinst, groups, {}, start).z;
  double best = std::numeric_limits<double>::infinity();

  for (int it = 1; it <= opts.max_iterations; ++it) {
    st.iterations = it;
    std::vector<SubproblemResult> subs(active.size());
    parallel_for(active.size(), [&](size_t k) {
      std::vector<char> zcol(ng);
      for (int g = 0; g < ng; ++g) zcol[g] = z[g][active[k]];
      subs[k] = benders_subproblem(pinst, groups, active[k], zcol);
    });

    FloMoreResult cand;
    cand.groups = groups;
    cand.z = z;
    cand.routing.x.assign(nq, {});
    std::vector<std::vector<double>> by_group(ng, std::vector<double>(nq, 0.0));
    for (int q = 0; q < nq; ++q) {
      if (perfect[q]) cand.routing.x[q] = cached[q].x;
    }
    for (size_t k = 0; k < active.size(); ++k) {
      const int q = active[k];
      cand.routing.x[q] = subs[k].x;
      for (int g = 0; g < ng; ++g) by_group[g][q] = subs[k].loss[g];
      st.cuts.push_back(subs[k].cut);
    }
    cand.routing.loss = detail::flow_losses(pinst, groups, by_group);
    cand.report = percentile_analysis(pinst, cand.routing.loss);
    cand.alpha = over_threshold(pinst, cand.report);
    if (cand.alpha < best - 1e-12) {
      best = cand.alpha;
      out.best = std::move(cand);
    } else if (hamming >= 0) {
      hamming *= 2;
    }
    st.incumbent = best;

    MasterOptions free_opts;
    free_opts.mip = opts.mip;
    const MasterResult relaxed = benders_master(pinst, groups, st.cuts, free_opts);
    st.lower_bound = std::max(st.lower_bound, relaxed.bound);
    st.incumbent_history.push_back(st.incumbent);
    st.bound_history.push_back(st.lower_bound);
    if (st.lower_bound >= st.incumbent - opts.gap) break;

    if (hamming < 0 || hamming >= entries) {
      z = relaxed.z;
    } else {
      MasterOptions ball = free_opts;
      ball.hamming_limit = static_cast<int>(hamming);
      const std::vector<std::vector<char>> prev = z;
      ball.previous = &prev;
      z = benders_master(pinst, groups, st.cuts, ball).z;
    }
  }
  return out;
}

}  // namespace rte
