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

#include "resilient_te.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "rte/flomore.h"
#include "rte/harness.h"
#include "rte/oracle.h"
#include "rte/realize.h"
#include "rte/robust.h"

struct rte_instance {
  rte::NetworkInstance inst;
};

struct rte_plan {
  std::shared_ptr<const rte::Network> net;
  rte::ReservationPlan plan;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

rte_status to_status(rte::ErrorCode c) {
  using rte::ErrorCode;
  switch (c) {
    case ErrorCode::kInvalidArgument: return RTE_INVALID_ARGUMENT;
    case ErrorCode::kUnknownId: return RTE_UNKNOWN_ID;
    case ErrorCode::kInvalidInstance: return RTE_INVALID_INSTANCE;
    case ErrorCode::kParse: return RTE_PARSE;
    case ErrorCode::kScenarioBlowup: return RTE_SCENARIO_BLOWUP;
    case ErrorCode::kSolverStall: return RTE_SOLVER_STALL;
    case ErrorCode::kBudgetExceeded: return RTE_BUDGET_EXCEEDED;
    case ErrorCode::kInternalModelError: return RTE_INTERNAL_MODEL_ERROR;
    case ErrorCode::kMatrixNotWcdd: return RTE_MATRIX_NOT_WCDD;
    case ErrorCode::kNotTopologicallySorted: return RTE_NOT_TOPOLOGICALLY_SORTED;
    case ErrorCode::kInfeasibleTarget: return RTE_INFEASIBLE_TARGET;
    case ErrorCode::kInternal: return RTE_INTERNAL;
  }
  return RTE_INTERNAL;
}

template <typename F>
rte_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RTE_OK;
  } catch (const rte::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return RTE_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RTE_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RTE_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw rte::Error(rte::ErrorCode::kInvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<std::string> split(const char* s) {
  std::vector<std::string> out;
  if (!s) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

rte_instance* wrap(rte::NetworkInstance in) {
  return new rte_instance{std::move(in)};
}

std::vector<int> failed_indices(const rte::Network& net, const char* ids) {
  std::vector<int> out;
  for (const std::string& id : split(ids)) out.push_back(net.link(id));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

json routing_json(const rte::Network& net, const rte::ScenarioRouting& r) {
  json j;
  j["failed"] = json::array();
  for (int e : r.failed) j["failed"].push_back(net.link_id(e));
  j["delivered"] = json::object();
  for (const auto& [p, v] : r.delivered) j["delivered"][net.pair_name(p)] = v;
  j["tunnel_load"] = json::object();
  const std::vector<double> tl = r.tunnel_load(net);
  for (int l = 0; l < net.num_tunnels(); ++l) {
    j["tunnel_load"][net.instance().tunnels[l].id] = tl[l];
  }
  j["link_load"] = json::object();
  const std::vector<double> ll = r.link_load(net);
  double peak = 0.0;
  for (int e = 0; e < net.num_links(); ++e) {
    j["link_load"][net.link_id(e)] = ll[e];
    if (net.capacity(e) > 0) peak = std::max(peak, ll[e] / net.capacity(e));
  }
  j["max_utilization"] = peak;
  return j;
}

json report_json(const rte::ProbabilisticInstance& pinst, const rte::LossReport& r) {
  json j;
  j["max_flow_pct_loss"] = r.max_flow_pct_loss;
  j["scen_pct_loss"] = r.scen_pct_loss;
  j["flow_loss"] = json::object();
  for (int f = 0; f < pinst.net.num_flows(); ++f) {
    j["flow_loss"][pinst.net.instance().demands[f].flow_id] = r.flow_loss[f];
  }
  return j;
}

std::optional<double> beta_arg(double beta) {
  if (beta > 0.0) return beta;
  return std::nullopt;
}

}  // namespace

extern "C" {

const char* rte_version(void) { return "0.1.0"; }

const char* rte_status_name(rte_status status) {
  switch (status) {
    case RTE_OK: return "OK";
    case RTE_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case RTE_UNKNOWN_ID: return "UNKNOWN_ID";
    case RTE_INVALID_INSTANCE: return "INVALID_INSTANCE";
    case RTE_PARSE: return "PARSE_ERROR";
    case RTE_SCENARIO_BLOWUP: return "SCENARIO_BLOWUP";
    case RTE_SOLVER_STALL: return "SOLVER_STALL";
    case RTE_BUDGET_EXCEEDED: return "BUDGET_EXCEEDED";
    case RTE_INTERNAL_MODEL_ERROR: return "INTERNAL_MODEL_ERROR";
    case RTE_MATRIX_NOT_WCDD: return "MATRIX_NOT_WCDD";
    case RTE_NOT_TOPOLOGICALLY_SORTED: return "NOT_TOPOLOGICALLY_SORTED";
    case RTE_INFEASIBLE_TARGET: return "INFEASIBLE_TARGET";
    case RTE_INTERNAL: return "INTERNAL";
  }
  return "UNKNOWN";
}

const char* rte_last_error(void) { return g_last_error.c_str(); }

void rte_string_free(char* s) { std::free(s); }

rte_status rte_instance_load(const char* path, rte_instance** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = wrap(rte::load_instance(path));
  });
}

rte_status rte_instance_parse(const char* text, rte_instance** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = wrap(rte::instance_from_json(text));
  });
}

rte_status rte_instance_fixture(const char* name, rte_instance** out) {
  return guarded([&] {
    require(name && out, "null argument");
    for (auto& [n, in] : rte::bundled_fixtures()) {
      if (n == name) {
        *out = wrap(std::move(in));
        return;
      }
    }
    throw rte::Error(rte::ErrorCode::kUnknownId, std::string("unknown fixture ") + name);
  });
}

rte_status rte_fixture_names(char** out_json) {
  return guarded([&] {
    require(out_json, "null argument");
    json names = json::array();
    for (const auto& entry : rte::bundled_fixtures()) names.push_back(entry.first);
    *out_json = dup(names.dump());
  });
}

void rte_instance_free(rte_instance* inst) { delete inst; }

rte_status rte_instance_to_json(const rte_instance* inst, char** out_json) {
  return guarded([&] {
    require(inst && out_json, "null argument");
    *out_json = dup(rte::instance_to_json(inst->inst));
  });
}

rte_status rte_instance_validate(const rte_instance* inst, char** out_json) {
  bool valid = false;
  const rte_status st = guarded([&] {
    require(inst && out_json, "null argument");
    json diags = json::array();
    for (const rte::Diagnostic& d : rte::validate_instance(inst->inst)) {
      diags.push_back({{"code", d.code}, {"message", d.message}});
    }
    valid = diags.empty();
    *out_json = dup(diags.dump(2));
  });
  if (st != RTE_OK) return st;
  if (!valid) {
    g_last_error = "instance has structural errors";
    return RTE_INVALID_INSTANCE;
  }
  return RTE_OK;
}

rte_status rte_gen_demands(const rte_instance* inst, double mlu_lo, double mlu_hi,
                           uint64_t seed, rte_instance** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    rte::NetworkInstance next = inst->inst;
    next.demands = rte::generate_gravity_demands(inst->inst, mlu_lo, mlu_hi, seed);
    *out = wrap(std::move(next));
  });
}

rte_status rte_gen_tunnels(const rte_instance* inst, int count, rte_instance** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    require(count > 0, "tunnel count must be positive");
    *out = wrap(rte::with_selected_tunnels(inst->inst, count));
  });
}

rte_status rte_gen_scenarios(const rte_instance* inst, double shape, double scale,
                             uint64_t seed, rte_instance** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    require(shape > 0.0, "Weibull shape must be positive");
    const double sc = scale > 0.0 ? scale : rte::default_weibull_scale(shape);
    *out = wrap(rte::sample_link_probs(inst->inst, shape, sc, seed));
  });
}

rte_status rte_gen_sublinks(const rte_instance* inst, rte_instance** out) {
  return guarded([&] {
    require(inst && out, "null argument");
    *out = wrap(rte::split_sublinks(inst->inst));
  });
}

void rte_solve_options_init(rte_solve_options* opts) {
  if (!opts) return;
  opts->model = "ffc-plus";
  opts->objective = "throughput";
  opts->mode = "dual";
  opts->k = 1;
  opts->srlg_conditions = nullptr;
  opts->k_groups = 0;
}

rte_status rte_solve(const rte_instance* inst, const rte_solve_options* opts,
                     rte_plan** out) {
  return guarded([&] {
    require(inst && opts && out, "null argument");
    require(opts->k >= 0, "k must be >= 0");
    auto net = std::make_shared<const rte::Network>(inst->inst);
    rte::RobustOptions ro;
    ro.model = rte::parse_model(opts->model ? opts->model : "ffc-plus");
    ro.objective = rte::parse_objective(opts->objective ? opts->objective : "throughput");
    ro.mode = rte::parse_mode(opts->mode ? opts->mode : "dual");
    ro.failure.k = opts->k;
    for (const std::string& id : split(opts->srlg_conditions)) {
      ro.failure.srlg_groups.push_back(net->instance().conditions[net->condition(id)]);
    }
    ro.failure.k_groups = opts->k_groups;
    *out = new rte_plan{net, rte::solve_robust(*net, ro)};
  });
}

void rte_plan_free(rte_plan* plan) { delete plan; }

rte_status rte_plan_objective(const rte_plan* plan, double* out) {
  return guarded([&] {
    require(plan && out, "null argument");
    *out = plan->plan.objective_value;
  });
}

rte_status rte_plan_to_json(const rte_plan* plan, char** out_json) {
  return guarded([&] {
    require(plan && out_json, "null argument");
    *out_json = dup(rte::plan_to_json(*plan->net, plan->plan));
  });
}

rte_status rte_plan_from_json(const rte_instance* inst, const char* text, rte_plan** out) {
  return guarded([&] {
    require(inst && text && out, "null argument");
    auto net = std::make_shared<const rte::Network>(inst->inst);
    *out = new rte_plan{net, rte::plan_from_json(*net, text)};
  });
}

rte_status rte_oracle(const rte_instance* inst, int k, const char* objective,
                      char** out_json) {
  return guarded([&] {
    require(inst && out_json, "null argument");
    require(k >= 0, "k must be >= 0");
    const rte::Network net(inst->inst);
    const rte::WorstCase wc =
        rte::worst_case_optimal(net, k, rte::parse_objective(objective ? objective : "throughput"));
    json j;
    j["k"] = k;
    j["value"] = wc.value;
    j["scenario"] = json::array();
    for (int e : wc.scenario) j["scenario"].push_back(net.link_id(e));
    j["scenarios"] = wc.scenarios;
    *out_json = dup(j.dump(2));
  });
}

rte_status rte_realize(const rte_instance* inst, const rte_plan* plan,
                       const char* failed_links, const char* method, char** out_json) {
  return guarded([&] {
    require(inst && plan && out_json, "null argument");
    const rte::Network& net = *plan->net;
    const std::vector<int> failed = failed_indices(net, failed_links);
    const rte::LinkMask mask = rte::make_mask(net, failed);
    const std::string m = method ? method : "solve";
    rte::ScenarioRouting r;
    if (m == "solve" || m == "gauss") {
      r = rte::extract_routing(net, plan->plan, mask, rte::LinearSolver::kGauss);
    } else if (m == "jacobi") {
      r = rte::extract_routing(net, plan->plan, mask, rte::LinearSolver::kJacobi);
    } else if (m == "proportional") {
      r = rte::proportional_routing(net, plan->plan, mask);
    } else {
      throw rte::Error(rte::ErrorCode::kInvalidArgument, "unknown realization method " + m);
    }
    json j = routing_json(net, r);
    j["method"] = m;
    *out_json = dup(j.dump(2));
  });
}

rte_status rte_analyze(const rte_instance* inst, const rte_plan* plan, int k,
                       char** out_json) {
  return guarded([&] {
    require(inst && plan && out_json, "null argument");
    require(k >= 0, "k must be >= 0");
    const rte::Network& net = *plan->net;
    const auto sets = rte::enumerate_failure_sets(net, k);
    double worst_fraction = 1.0, peak = 0.0;
    json worst_scenario = json::array();
    for (const std::vector<int>& failed : sets) {
      const rte::ScenarioRouting r =
          rte::extract_routing(net, plan->plan, rte::make_mask(net, failed));
      for (const rte::NodePair& p : net.demand_pairs()) {
        auto it = r.delivered.find(p);
        const double frac = (it == r.delivered.end() ? 0.0 : it->second) / net.demand(p);
        if (frac < worst_fraction - 1e-12) {
          worst_fraction = frac;
          worst_scenario = json::array();
          for (int e : failed) worst_scenario.push_back(net.link_id(e));
        }
      }
      const std::vector<double> ll = r.link_load(net);
      for (int e = 0; e < net.num_links(); ++e) {
        if (net.capacity(e) > 0) peak = std::max(peak, ll[e] / net.capacity(e));
      }
    }
    json j;
    j["k"] = k;
    j["scenarios"] = sets.size();
    j["min_delivered_fraction"] = worst_fraction;
    j["worst_scenario"] = worst_scenario;
    j["max_utilization"] = peak;
    *out_json = dup(j.dump(2));
  });
}

rte_status rte_flomore(const rte_instance* inst, const char* method, double beta,
                       int max_iterations, char** out_json) {
  return guarded([&] {
    require(inst && out_json, "null argument");
    const rte::Network net(inst->inst);
    const rte::ProbabilisticInstance pinst = rte::make_prob_instance(net, beta_arg(beta));
    const std::string m = method ? method : "direct";
    json j;
    rte::FloMoreResult res;
    if (m == "direct" || m == "solve") {
      res = rte::solve_direct_mip(pinst);
    } else if (m == "minmax") {
      res = rte::minmax_baseline(pinst);
    } else if (m == "benders") {
      rte::BendersOptions bo;
      if (max_iterations > 0) bo.max_iterations = max_iterations;
      rte::BendersResult br = rte::benders_run(pinst, bo);
      res = std::move(br.best);
      j["iterations"] = br.state.iterations;
      j["incumbent"] = br.state.incumbent;
      j["lower_bound"] = br.state.lower_bound;
      j["perfect_scenarios"] = br.state.perfect_scenarios;
      j["incumbent_history"] = br.state.incumbent_history;
      j["bound_history"] = br.state.bound_history;
    } else {
      throw rte::Error(rte::ErrorCode::kInvalidArgument, "unknown method " + m);
    }
    j["method"] = m;
    j["beta"] = pinst.beta;
    j["scenarios"] = pinst.num_scenarios();
    j["alpha"] = res.alpha;
    j["report"] = report_json(pinst, res.report);
    *out_json = dup(j.dump(2));
  });
}

rte_status rte_cvar(const rte_instance* inst, const char* variant, double beta,
                    char** out_json) {
  return guarded([&] {
    require(inst && out_json, "null argument");
    const rte::Network net(inst->inst);
    const rte::ProbabilisticInstance pinst = rte::make_prob_instance(net, beta_arg(beta));
    const rte::CvarVariant v = rte::parse_cvar_variant(variant ? variant : "flow-adaptive");
    const rte::CvarResult res = rte::solve_cvar(pinst, v);
    json j;
    j["variant"] = rte::cvar_variant_name(v);
    j["beta"] = pinst.beta;
    j["scenarios"] = pinst.num_scenarios();
    j["objective"] = res.objective;
    j["max_flow_cvar"] = res.max_flow_cvar;
    j["report"] = report_json(pinst, res.report);
    *out_json = dup(j.dump(2));
  });
}

rte_status rte_report(const rte_instance* inst, const char* models, const char* ks,
                      const char* objective, const char* mode, char** out_csv) {
  return guarded([&] {
    require(inst && out_csv, "null argument");
    const rte::Network net(inst->inst);
    std::vector<rte::Model> ms;
    for (const std::string& s : split(models ? models : "ffc,ffc-plus,ls,cls,flow")) {
      ms.push_back(rte::parse_model(s));
    }
    std::vector<int> kv;
    for (const std::string& s : split(ks ? ks : "1")) {
      try {
        kv.push_back(std::stoi(s));
      } catch (const std::exception&) {
        throw rte::Error(rte::ErrorCode::kInvalidArgument, "bad k value " + s);
      }
      require(kv.back() >= 0, "k must be >= 0");
    }
    const auto rows = rte::run_report(
        net, ms, kv, rte::parse_objective(objective ? objective : "throughput"),
        rte::parse_mode(mode ? mode : "dual"));
    *out_csv = dup(rte::report_csv(rows));
  });
}

}  // extern "C"
