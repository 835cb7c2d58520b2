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

#include "rte/robust.h"

#include <algorithm>
#include <set>

#include "robust_internal.h"

namespace rte {

const char* model_name(Model m) {
  switch (m) {
    case Model::kFfc: return "ffc";
    case Model::kFfcPlus: return "ffc_plus";
    case Model::kLs: return "ls";
    case Model::kCls: return "cls";
    case Model::kLogicalFlow: return "logical_flow";
  }
  return "?";
}

const char* objective_name(ObjectiveKind o) {
  return o == ObjectiveKind::kDemandScale ? "demand_scale" : "throughput";
}

const char* mode_name(Mode m) { return m == Mode::kDual ? "dual" : "enumerate"; }

namespace {

std::string canon(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

}  // namespace

Model parse_model(const std::string& s) {
  const std::string c = canon(s);
  if (c == "ffc") return Model::kFfc;
  if (c == "ffc_plus" || c == "ffcplus") return Model::kFfcPlus;
  if (c == "ls") return Model::kLs;
  if (c == "cls") return Model::kCls;
  if (c == "logical_flow" || c == "flow") return Model::kLogicalFlow;
  throw Error(ErrorCode::kInvalidArgument, "unknown model: " + s);
}

ObjectiveKind parse_objective(const std::string& s) {
  const std::string c = canon(s);
  if (c == "demand_scale") return ObjectiveKind::kDemandScale;
  if (c == "throughput") return ObjectiveKind::kThroughput;
  throw Error(ErrorCode::kInvalidArgument, "unknown objective: " + s);
}

Mode parse_mode(const std::string& s) {
  if (s == "dual") return Mode::kDual;
  if (s == "enumerate") return Mode::kEnumerate;
  throw Error(ErrorCode::kInvalidArgument, "unknown mode: " + s);
}

bool ReservationPlan::sequence_active(const Network& net, int q,
                                      const LinkMask& failed) const {
  if (model == Model::kLs) return true;
  if (model != Model::kCls) return false;
  return ::rte::sequence_active(net, q, failed);
}

DualCertificate dualize_constraint(lp::LinearProgram& lp, const ProtectedRow& row,
                                   const FailurePolytope& polytope) {
  if (row.loss.size() != polytope.vars.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "protected row does not match the polytope's indicators");
  }
  DualCertificate cert;
  const std::string base = row.name.empty() ? "prot" : row.name;
  // max loss.u  s.t.  G u <= g, 0 <= u <= 1  is bounded by
  // min g.lambda + 1.mu  s.t.  G^T lambda + mu >= loss, lambda, mu >= 0.
  std::vector<std::vector<lp::Term>> cols(polytope.vars.size());
  lp::LinExpr bound = row.guaranteed;
  for (size_t r = 0; r < polytope.rows.size(); ++r) {
    const PolytopeRow& pr = polytope.rows[r];
    const double lo = pr.equality ? -lp::kInf : 0.0;
    const int lam = lp.add_variable(base + ".lam" + std::to_string(r), lo, lp::kInf);
    cert.row_duals.push_back(lam);
    for (const auto& [i, a] : pr.coefs) cols[i].push_back({lam, a});
    if (pr.rhs != 0.0) bound.add(lam, -pr.rhs);
  }
  for (size_t i = 0; i < polytope.vars.size(); ++i) {
    const int mu = lp.add_variable(base + ".mu" + std::to_string(i));
    cert.bound_duals.push_back(mu);
    bound.add(mu, -1.0);
    lp::LinExpr feas;
    for (const lp::Term& t : cols[i]) feas.add(t.var, t.coef);
    feas.add(mu, 1.0);
    feas.add(row.loss[i], -1.0);
    lp.add_row(feas, lp::Sense::kGe, 0.0, base + ".df" + std::to_string(i));
  }
  cert.objective_row = lp.add_row(bound, lp::Sense::kGe, 0.0, base + ".cert");
  return cert;
}

void instantiate_constraint(lp::LinearProgram& lp, const ProtectedRow& row,
                            const std::vector<std::vector<char>>& points) {
  const std::string base = row.name.empty() ? "prot" : row.name;
  int n = 0;
  for (const auto& pt : points) {
    if (pt.size() > row.loss.size()) {
      throw Error(ErrorCode::kInvalidArgument, "failure point wider than row");
    }
    lp::LinExpr e = row.guaranteed;
    for (size_t i = 0; i < pt.size(); ++i) {
      if (pt[i]) e.add(row.loss[i], -1.0);
    }
    lp.add_row(e, lp::Sense::kGe, 0.0, base + ".s" + std::to_string(n++));
  }
}

namespace detail {

ObjectiveBuilder::ObjectiveBuilder(lp::LinearProgram& lp, const Network& net,
                                   ObjectiveKind kind)
    : lp_(lp), net_(net), kind_(kind) {
  const auto pairs = net.demand_pairs();
  if (kind == ObjectiveKind::kDemandScale) {
    zscalar_ = lp.add_variable("z", 0.0, pairs.empty() ? 0.0 : lp::kInf);
    return;
  }
  for (NodePair p : pairs) {
    const std::string nm = net.pair_name(p);
    z_[p] = lp.add_variable("z." + nm);
    t_[p] = lp.add_variable("t." + nm, 0.0, 1.0);
    lp.add_row({{t_[p], 1.0}, {z_[p], -1.0}}, lp::Sense::kLe, 0.0, "cap1." + nm);
  }
}

void ObjectiveBuilder::subtract_demand(lp::LinExpr& e, NodePair p) const {
  const double d = net_.demand(p);
  if (d <= 0.0) return;
  e.add(kind_ == ObjectiveKind::kDemandScale ? zscalar_ : z_.at(p), -d);
}

void ObjectiveBuilder::set_objective() {
  lp::LinExpr obj;
  if (kind_ == ObjectiveKind::kDemandScale) {
    obj.add(zscalar_, 1.0);
  } else {
    for (const auto& [p, t] : t_) obj.add(t, net_.demand(p));
  }
  lp_.set_objective(lp::ObjSense::kMax, obj);
}

void ObjectiveBuilder::fill(const lp::Solution& sol, ReservationPlan& plan) const {
  plan.objective_value = sol.objective;
  plan.z.clear();
  for (NodePair p : net_.demand_pairs()) {
    plan.z[p] = kind_ == ObjectiveKind::kDemandScale ? sol.x[zscalar_]
                                                     : sol.x[z_.at(p)];
  }
}

void add_capacity_rows(lp::LinearProgram& lp, const Network& net,
                       const std::vector<int>& a_var) {
  std::vector<std::vector<lp::Term>> on_link(net.num_links());
  for (int l = 0; l < net.num_tunnels(); ++l) {
    if (a_var[l] < 0) continue;
    for (int e : net.tunnel_links(l)) on_link[e].push_back({a_var[l], 1.0});
  }
  for (int e = 0; e < net.num_links(); ++e) {
    if (on_link[e].empty()) continue;
    lp.add_row(on_link[e], lp::Sense::kLe, net.capacity(e), "cap." + net.link_id(e));
  }
}

void emit_protected(lp::LinearProgram& lp, const Network& net,
                    const ProtectedRow& row, PolytopeKind kind,
                    const FailureSpec& spec, const std::vector<int>& tunnels,
                    const std::vector<int>& conditions, Mode mode, double guard) {
  if (tunnels.empty() && conditions.empty()) {
    lp.add_row(row.guaranteed, lp::Sense::kGe, 0.0, row.name);
    return;
  }
  if (mode == Mode::kEnumerate) {
    instantiate_constraint(
        lp, row,
        enumerate_restricted_points(net, kind, spec, tunnels, conditions, guard));
    return;
  }
  const FailurePolytope P =
      build_restricted_polytope(net, kind, spec, tunnels, conditions);
  ProtectedRow padded = row;
  padded.loss.resize(P.vars.size());
  dualize_constraint(lp, padded, P);
}

lp::Solution solve_or_throw(const lp::LinearProgram& lp,
                            const lp::SimplexOptions& opts, const char* what) {
  lp::Solution sol = lp::solve_lp(lp, opts);
  if (sol.status != lp::Status::kOptimal) {
    throw Error(ErrorCode::kInternalModelError,
                std::string(what) + " model is " + lp::status_name(sol.status));
  }
  return sol;
}

}  // namespace detail

ReservationPlan solve_robust(const Network& net, const RobustOptions& opts) {
  if (opts.model == Model::kLogicalFlow) {
    LogicalFlowOptions lf;
    lf.failure = opts.failure;
    lf.objective = opts.objective;
    lf.mode = opts.mode;
    lf.pattern_guard = opts.pattern_guard;
    lf.lp = opts.lp;
    return solve_logical_flow(net, lf).plan;
  }
  if (opts.failure.k < 0 || opts.failure.k_groups < 0) {
    throw Error(ErrorCode::kInvalidArgument, "failure budget must be >= 0");
  }
  const bool with_ls = opts.model == Model::kLs || opts.model == Model::kCls;
  const bool conditional = opts.model == Model::kCls;

  // Active pairs: positive demand, or a segment some LS loads.
  std::set<NodePair> active;
  for (NodePair p : net.demand_pairs()) active.insert(p);
  if (with_ls) {
    for (int q = 0; q < net.num_sequences(); ++q) {
      for (NodePair seg : net.sequence_segments(q)) active.insert(seg);
    }
  }

  lp::LinearProgram lp;
  std::vector<int> a_var(net.num_tunnels(), -1);
  for (NodePair p : active) {
    for (int l : net.tunnels_of(p)) {
      a_var[l] = lp.add_variable("a." + net.instance().tunnels[l].id);
    }
  }
  std::vector<int> b_var(net.num_sequences(), -1);
  if (with_ls) {
    for (int q = 0; q < net.num_sequences(); ++q) {
      b_var[q] = lp.add_variable("b." + net.instance().sequences[q].id);
    }
  }
  detail::ObjectiveBuilder objective(lp, net, opts.objective);
  detail::add_capacity_rows(lp, net, a_var);

  // Sequences using each pair as a segment, with multiplicity.
  std::map<NodePair, std::map<int, int>> users;
  if (with_ls) {
    for (int q = 0; q < net.num_sequences(); ++q) {
      for (NodePair seg : net.sequence_segments(q)) ++users[seg][q];
    }
  }
  auto cond_of = [&](int q) {
    return conditional ? net.sequence_condition(q) : -1;
  };

  PolytopeKind kind = PolytopeKind::kExact;
  if (opts.model == Model::kFfc) kind = PolytopeKind::kFfc;
  if (conditional) kind = PolytopeKind::kHint;

  for (NodePair p : active) {
    const std::vector<int>& tunnels = net.tunnels_of(p);
    ProtectedRow row;
    row.name = "prot." + net.pair_name(p);
    for (int l : tunnels) row.guaranteed.add(a_var[l], 1.0);
    objective.subtract_demand(row.guaranteed, p);

    // Conditional terms, collected per condition index.
    std::map<int, lp::LinExpr> cond_loss;
    if (with_ls) {
      for (int q : net.sequences_of(p)) {
        const int c = cond_of(q);
        if (c < 0) {
          row.guaranteed.add(b_var[q], 1.0);
        } else {
          cond_loss[c].add(b_var[q], -1.0);
        }
      }
      auto it = users.find(p);
      if (it != users.end()) {
        for (const auto& [q, mult] : it->second) {
          const int c = cond_of(q);
          if (c < 0) {
            row.guaranteed.add(b_var[q], -mult);
          } else {
            cond_loss[c].add(b_var[q], mult);
          }
        }
      }
    }
    std::vector<int> conditions;
    for (int l : tunnels) row.loss.push_back(lp::LinExpr().add(a_var[l], 1.0));
    for (auto& [c, e] : cond_loss) {
      conditions.push_back(c);
      e.normalize();
      row.loss.push_back(e);
    }
    detail::emit_protected(lp, net, row, kind, opts.failure, tunnels, conditions,
                           opts.mode, opts.pattern_guard);
  }
  objective.set_objective();

  const lp::Solution sol = detail::solve_or_throw(lp, opts.lp, model_name(opts.model));
  ReservationPlan plan;
  plan.model = opts.model;
  plan.mode = opts.mode;
  plan.objective = opts.objective;
  plan.failure = opts.failure;
  plan.lp_variables = lp.num_variables();
  plan.lp_rows = lp.num_rows();
  plan.tunnel_res.assign(net.num_tunnels(), 0.0);
  plan.sequence_res.assign(net.num_sequences(), 0.0);
  for (int l = 0; l < net.num_tunnels(); ++l) {
    if (a_var[l] >= 0) plan.tunnel_res[l] = std::max(0.0, sol.x[a_var[l]]);
  }
  for (int q = 0; q < net.num_sequences(); ++q) {
    if (b_var[q] >= 0) plan.sequence_res[q] = std::max(0.0, sol.x[b_var[q]]);
  }
  objective.fill(sol, plan);
  return plan;
}

}  // namespace rte
