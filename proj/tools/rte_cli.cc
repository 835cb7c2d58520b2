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

// Command-line front end. Talks to the library only through resilient_te.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "resilient_te.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolver = 2;

// Raised after the library reports a failure; carries the exit code.
struct Failure {
  int exit_code;
};

int exit_code_for(rte_status st) {
  switch (st) {
    case RTE_OK: return kExitOk;
    case RTE_INVALID_ARGUMENT:
    case RTE_UNKNOWN_ID:
    case RTE_INVALID_INSTANCE:
    case RTE_PARSE: return kExitUsage;
    default: return kExitSolver;
  }
}

void check(rte_status st, const std::string& what) {
  if (st == RTE_OK) return;
  std::cerr << "error: " << rte_status_name(st) << ": " << what << ": " << rte_last_error()
            << "\n";
  throw Failure{exit_code_for(st)};
}

struct InstanceDeleter {
  void operator()(rte_instance* p) const { rte_instance_free(p); }
};
struct PlanDeleter {
  void operator()(rte_plan* p) const { rte_plan_free(p); }
};
using InstancePtr = std::unique_ptr<rte_instance, InstanceDeleter>;
using PlanPtr = std::unique_ptr<rte_plan, PlanDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  rte_string_free(s);
  return out;
}

// Prints like 1.0 / 0.6666666667.
std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

struct Input {
  std::string path;
  std::string fixture;
};

void add_input(CLI::App* app, Input& in) {
  app->add_option("instance", in.path, "Instance JSON file");
  app->add_option("--fixture", in.fixture, "Use a bundled fixture instead of a file");
}

InstancePtr open_instance(const Input& in) {
  rte_instance* raw = nullptr;
  if (!in.fixture.empty()) {
    check(rte_instance_fixture(in.fixture.c_str(), &raw), "fixture " + in.fixture);
  } else if (!in.path.empty()) {
    check(rte_instance_load(in.path.c_str(), &raw), "loading " + in.path);
  } else {
    std::cerr << "error: INVALID_ARGUMENT: an instance file or --fixture is required\n";
    throw Failure{kExitUsage};
  }
  return InstancePtr(raw);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: INVALID_ARGUMENT: cannot open " << path << "\n";
    throw Failure{kExitUsage};
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: INVALID_ARGUMENT: cannot write " << path << "\n";
    throw Failure{kExitUsage};
  }
  f << text;
}

uint64_t default_seed() {
  if (const char* env = std::getenv("RESILIENT_TE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring RESILIENT_TE_SEED=" << env << "\n";
    }
  }
  return 1;
}

PlanPtr load_plan(rte_instance* inst, const std::string& path) {
  rte_plan* raw = nullptr;
  check(rte_plan_from_json(inst, read_file(path).c_str(), &raw), "reading plan " + path);
  return PlanPtr(raw);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Failure-resilient traffic engineering toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rte_version()));
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (overrides RESILIENT_TE_THREADS)")
      ->check(CLI::PositiveNumber);
  std::string output;
  app.add_option("-o,--output", output, "Write the result here instead of stdout");

  Input in;
  std::function<void()> action;

  auto* validate = app.add_subcommand("validate", "Check an instance for structural errors");
  add_input(validate, in);
  validate->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      char* diags = nullptr;
      const rte_status st = rte_instance_validate(inst.get(), &diags);
      const std::string text = take(diags);
      if (st == RTE_INVALID_INSTANCE) {
        std::cerr << "error: INVALID_INSTANCE: " << text << "\n";
        throw Failure{kExitUsage};
      }
      check(st, "validate");
      emit("ok", output);
    };
  });

  auto* fixtures = app.add_subcommand("fixtures", "List or export bundled fixtures");
  std::string fixture_name;
  fixtures->add_option("name", fixture_name, "Fixture to print as instance JSON");
  fixtures->callback([&] {
    action = [&] {
      char* out = nullptr;
      if (fixture_name.empty()) {
        check(rte_fixture_names(&out), "fixtures");
      } else {
        rte_instance* raw = nullptr;
        check(rte_instance_fixture(fixture_name.c_str(), &raw), "fixture " + fixture_name);
        InstancePtr inst(raw);
        check(rte_instance_to_json(inst.get(), &out), "fixture " + fixture_name);
      }
      emit(take(out), output);
    };
  });

  auto* gen = app.add_subcommand("gen", "Instance generators");
  gen->require_subcommand(1);
  double mlu_lo = 0.5, mlu_hi = 0.7, shape = 0.8, scale = 0.0;
  uint64_t seed = default_seed();
  int count = 4;
  auto run_gen = [&](auto fn, const char* what) {
    action = [&, fn, what] {
      InstancePtr inst = open_instance(in);
      rte_instance* raw = nullptr;
      check(fn(inst.get(), &raw), what);
      InstancePtr next(raw);
      char* out = nullptr;
      check(rte_instance_to_json(next.get(), &out), what);
      emit(take(out), output);
    };
  };
  auto* gen_demands = gen->add_subcommand("demands", "Gravity demands scaled to a target MLU");
  add_input(gen_demands, in);
  gen_demands->add_option("--mlu-lo", mlu_lo, "Lower end of the target MLU")->capture_default_str();
  gen_demands->add_option("--mlu-hi", mlu_hi, "Upper end of the target MLU")->capture_default_str();
  gen_demands->add_option("--seed", seed, "RNG seed (default RESILIENT_TE_SEED or 1)");
  gen_demands->callback([&] {
    run_gen([&](const rte_instance* i, rte_instance** o) {
      return rte_gen_demands(i, mlu_lo, mlu_hi, seed, o);
    }, "gen demands");
  });
  auto* gen_tunnels = gen->add_subcommand("tunnels", "Disjoint-first tunnels for every pair");
  add_input(gen_tunnels, in);
  gen_tunnels->add_option("--count", count, "Tunnels per pair")->capture_default_str();
  gen_tunnels->callback([&] {
    run_gen([&](const rte_instance* i, rte_instance** o) {
      return rte_gen_tunnels(i, count, o);
    }, "gen tunnels");
  });
  auto* gen_scen = gen->add_subcommand("scenarios", "Weibull link failure probabilities");
  add_input(gen_scen, in);
  gen_scen->add_option("--shape", shape, "Weibull shape")->capture_default_str();
  gen_scen->add_option("--scale", scale, "Weibull scale (default: median 0.001)");
  gen_scen->add_option("--seed", seed, "RNG seed (default RESILIENT_TE_SEED or 1)");
  gen_scen->callback([&] {
    run_gen([&](const rte_instance* i, rte_instance** o) {
      return rte_gen_scenarios(i, shape, scale, seed, o);
    }, "gen scenarios");
  });
  auto* gen_sub = gen->add_subcommand("sublinks", "Split every link into two halves");
  add_input(gen_sub, in);
  gen_sub->callback([&] {
    run_gen([](const rte_instance* i, rte_instance** o) { return rte_gen_sublinks(i, o); },
            "gen sublinks");
  });

  std::string model = "ffc-plus", objective = "throughput", mode = "dual";
  int k = 1;
  std::string srlg;
  int k_groups = 0;
  bool as_json = false;
  std::string plan_out;
  auto* solve = app.add_subcommand("solve", "Solve a robust reservation model");
  add_input(solve, in);
  solve->add_option("--model", model, "ffc|ffc-plus|ls|cls|flow")
      ->check(CLI::IsMember({"ffc", "ffc-plus", "ffc_plus", "ls", "cls", "flow",
                             "logical-flow", "logical_flow"}))
      ->capture_default_str();
  solve->add_option("--k", k, "Link failures to protect against")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  solve->add_option("--objective", objective, "demand-scale|throughput")
      ->check(CLI::IsMember({"demand-scale", "demand_scale", "throughput"}))
      ->capture_default_str();
  solve->add_option("--mode", mode, "dual|enumerate")
      ->check(CLI::IsMember({"dual", "enumerate"}))
      ->capture_default_str();
  solve->add_option("--srlg", srlg, "Comma-separated condition ids used as risk groups");
  solve->add_option("--k-groups", k_groups, "Risk groups that may fail together");
  solve->add_flag("--json", as_json, "Print the plan as JSON");
  solve->add_option("--plan-out", plan_out, "Also write the plan JSON here");
  solve->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      rte_solve_options opts;
      rte_solve_options_init(&opts);
      opts.model = model.c_str();
      opts.objective = objective.c_str();
      opts.mode = mode.c_str();
      opts.k = k;
      opts.srlg_conditions = srlg.empty() ? nullptr : srlg.c_str();
      opts.k_groups = k_groups;
      rte_plan* raw = nullptr;
      check(rte_solve(inst.get(), &opts, &raw), "solve");
      PlanPtr plan(raw);
      char* pj = nullptr;
      check(rte_plan_to_json(plan.get(), &pj), "solve");
      const std::string plan_json = take(pj);
      if (!plan_out.empty()) emit(plan_json, plan_out);
      double value = 0.0;
      check(rte_plan_objective(plan.get(), &value), "solve");
      emit(as_json ? plan_json : number(value), output);
    };
  });

  auto* oracle = app.add_subcommand("oracle", "Worst-case optimal flow over k failures");
  add_input(oracle, in);
  oracle->add_option("--k", k, "Link failures")->check(CLI::NonNegativeNumber)->capture_default_str();
  oracle->add_option("--objective", objective, "demand-scale|throughput")
      ->check(CLI::IsMember({"demand-scale", "demand_scale", "throughput"}))
      ->capture_default_str();
  oracle->add_flag("--json", as_json, "Print value, argmin scenario and count as JSON");
  oracle->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      char* out = nullptr;
      check(rte_oracle(inst.get(), k, objective.c_str(), &out), "oracle");
      const std::string text = take(out);
      if (as_json) {
        emit(text, output);
        return;
      }
      // "value": is the only number field printed before the scenario list.
      const auto pos = text.find("\"value\":");
      emit(number(std::strtod(text.c_str() + pos + 8, nullptr)), output);
    };
  });

  std::string plan_path, scenario, method = "solve";
  auto* realize = app.add_subcommand("realize", "Route a plan's traffic in one scenario");
  add_input(realize, in);
  realize->add_option("--plan", plan_path, "Plan JSON from solve --plan-out")->required();
  realize->add_option("--scenario", scenario, "Comma-separated failed link ids");
  realize->add_option("--method", method, "solve|jacobi|proportional")
      ->check(CLI::IsMember({"solve", "gauss", "jacobi", "proportional"}))
      ->capture_default_str();
  realize->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      PlanPtr plan = load_plan(inst.get(), plan_path);
      char* out = nullptr;
      check(rte_realize(inst.get(), plan.get(), scenario.c_str(), method.c_str(), &out),
            "realize");
      emit(take(out), output);
    };
  });

  auto* analyze = app.add_subcommand("analyze", "Realize a plan under every <= k failure");
  add_input(analyze, in);
  analyze->add_option("--plan", plan_path, "Plan JSON from solve --plan-out")->required();
  analyze->add_option("--k", k, "Link failures")->check(CLI::NonNegativeNumber)->capture_default_str();
  analyze->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      PlanPtr plan = load_plan(inst.get(), plan_path);
      char* out = nullptr;
      check(rte_analyze(inst.get(), plan.get(), k, &out), "analyze");
      emit(take(out), output);
    };
  });

  double beta = 0.0;
  int max_iterations = 0;
  std::string variant = "flow-adaptive";
  auto* flomore = app.add_subcommand("flomore", "Probabilistic loss percentile models");
  flomore->require_subcommand(1);
  auto add_beta = [&](CLI::App* sub) {
    add_input(sub, in);
    sub->add_option("--beta", beta, "Availability target (default: instance or automatic)")
        ->check(CLI::Range(0.0, 1.0));
  };
  auto* fl_solve = flomore->add_subcommand("solve", "Direct mixed-integer model");
  add_beta(fl_solve);
  bool minmax = false;
  fl_solve->add_flag("--minmax", minmax, "Per-scenario min-max baseline instead");
  fl_solve->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      char* out = nullptr;
      check(rte_flomore(inst.get(), minmax ? "minmax" : "direct", beta, 0, &out),
            "flomore solve");
      emit(take(out), output);
    };
  });
  auto* fl_benders = flomore->add_subcommand("benders", "Benders decomposition");
  add_beta(fl_benders);
  fl_benders->add_option("--max-iterations", max_iterations, "Iteration cap (default 20)");
  fl_benders->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      char* out = nullptr;
      check(rte_flomore(inst.get(), "benders", beta, max_iterations, &out), "flomore benders");
      emit(take(out), output);
    };
  });
  auto* fl_cvar = flomore->add_subcommand("cvar", "CVaR baselines");
  add_beta(fl_cvar);
  fl_cvar->add_option("--variant", variant, "flow-adaptive|flow-static|scen-static")
      ->check(CLI::IsMember({"flow-adaptive", "flow-static", "scen-static", "flow_adaptive",
                             "flow_static", "scen_static"}))
      ->capture_default_str();
  fl_cvar->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      char* out = nullptr;
      check(rte_cvar(inst.get(), variant.c_str(), beta, &out), "flomore cvar");
      emit(take(out), output);
    };
  });

  std::string models = "ffc,ffc-plus,ls,cls,flow", ks = "1";
  auto* report = app.add_subcommand("report", "CSV of model values against the oracle");
  add_input(report, in);
  report->add_option("--models", models, "Comma-separated models")->capture_default_str();
  report->add_option("--ks", ks, "Comma-separated failure counts")->capture_default_str();
  report->add_option("--objective", objective, "demand-scale|throughput")
      ->check(CLI::IsMember({"demand-scale", "demand_scale", "throughput"}))
      ->capture_default_str();
  report->add_option("--mode", mode, "dual|enumerate")
      ->check(CLI::IsMember({"dual", "enumerate"}))
      ->capture_default_str();
  report->callback([&] {
    action = [&] {
      InstancePtr inst = open_instance(in);
      char* out = nullptr;
      check(rte_report(inst.get(), models.c_str(), ks.c_str(), objective.c_str(),
                       mode.c_str(), &out),
            "report");
      emit(take(out), output);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (threads > 0) setenv("RESILIENT_TE_THREADS", std::to_string(threads).c_str(), 1);
  try {
    if (action) action();
  } catch (const Failure& f) {
    return f.exit_code;
  }
  return kExitOk;
}
