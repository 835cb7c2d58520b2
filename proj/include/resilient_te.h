/* Copyright 2026 The resilient-te Authors
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface of libresilient_te. Every call returns an rte_status; on
 * failure rte_last_error() holds a message for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * rte_string_free. Structured results are JSON documents. */

#ifndef RESILIENT_TE_H_
#define RESILIENT_TE_H_

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define RTE_API __declspec(dllexport)
#else
#define RTE_API __attribute__((visibility("default")))
#endif

typedef enum {
  RTE_OK = 0,
  RTE_INVALID_ARGUMENT,
  RTE_UNKNOWN_ID,
  RTE_INVALID_INSTANCE,
  RTE_PARSE,
  RTE_SCENARIO_BLOWUP,
  RTE_SOLVER_STALL,
  RTE_BUDGET_EXCEEDED,
  RTE_INTERNAL_MODEL_ERROR,
  RTE_MATRIX_NOT_WCDD,
  RTE_NOT_TOPOLOGICALLY_SORTED,
  RTE_INFEASIBLE_TARGET,
  RTE_INTERNAL
} rte_status;

typedef struct rte_instance rte_instance;
typedef struct rte_plan rte_plan;

RTE_API const char* rte_version(void);
/* "OK", "INVALID_ARGUMENT", ... */
RTE_API const char* rte_status_name(rte_status status);
/* Message of the last failed call on this thread, "" if none. */
RTE_API const char* rte_last_error(void);
RTE_API void rte_string_free(char* s);

/* Instances. parse/load do not validate; use rte_instance_validate. */
RTE_API rte_status rte_instance_load(const char* path, rte_instance** out);
RTE_API rte_status rte_instance_parse(const char* json, rte_instance** out);
RTE_API rte_status rte_instance_fixture(const char* name, rte_instance** out);
/* JSON array of bundled fixture names. */
RTE_API rte_status rte_fixture_names(char** out_json);
RTE_API void rte_instance_free(rte_instance* inst);
RTE_API rte_status rte_instance_to_json(const rte_instance* inst, char** out_json);
/* RTE_OK when valid, RTE_INVALID_INSTANCE otherwise. The diagnostics are
 * written as a JSON array of {code, message} either way. */
RTE_API rte_status rte_instance_validate(const rte_instance* inst, char** out_json);

/* Generators; each returns a new instance. */
RTE_API rte_status rte_gen_demands(const rte_instance* inst, double mlu_lo, double mlu_hi,
                                   uint64_t seed, rte_instance** out);
RTE_API rte_status rte_gen_tunnels(const rte_instance* inst, int count, rte_instance** out);
/* Weibull link failure probabilities; scale <= 0 picks the default. */
RTE_API rte_status rte_gen_scenarios(const rte_instance* inst, double shape, double scale,
                                     uint64_t seed, rte_instance** out);
RTE_API rte_status rte_gen_sublinks(const rte_instance* inst, rte_instance** out);

typedef struct {
  const char* model;     /* ffc, ffc-plus, ls, cls, flow */
  const char* objective; /* demand-scale, throughput */
  const char* mode;      /* dual, enumerate */
  int k;
  /* Optional: condition ids used as shared-risk groups, comma separated,
   * with at most k_groups of them failing. NULL for plain link failures. */
  const char* srlg_conditions;
  int k_groups;
} rte_solve_options;

/* Fills the defaults: ffc-plus, throughput, dual, k = 1. */
RTE_API void rte_solve_options_init(rte_solve_options* opts);
RTE_API rte_status rte_solve(const rte_instance* inst, const rte_solve_options* opts,
                             rte_plan** out);
RTE_API void rte_plan_free(rte_plan* plan);
RTE_API rte_status rte_plan_objective(const rte_plan* plan, double* out);
RTE_API rte_status rte_plan_to_json(const rte_plan* plan, char** out_json);
RTE_API rte_status rte_plan_from_json(const rte_instance* inst, const char* json,
                                      rte_plan** out);

/* Worst case of the optimal multi-commodity flow over <= k link failures:
 * {"value", "scenario": [link ids], "scenarios"}. */
RTE_API rte_status rte_oracle(const rte_instance* inst, int k, const char* objective,
                              char** out_json);

/* Routes the plan's traffic in one scenario. failed_links: comma separated
 * link ids, "" for none. method: "solve" (reservation system, gauss) ,
 * "jacobi" or "proportional". Result: delivered per pair, tunnel and link
 * loads and the peak link utilization. */
RTE_API rte_status rte_realize(const rte_instance* inst, const rte_plan* plan,
                               const char* failed_links, const char* method,
                               char** out_json);

/* Realizes the plan under every scenario with at most k failed links and
 * reports the worst delivered fraction and peak utilization. */
RTE_API rte_status rte_analyze(const rte_instance* inst, const rte_plan* plan, int k,
                               char** out_json);

/* Probabilistic models. beta <= 0 uses the instance value or the automatic
 * choice. method: "direct", "benders" or "minmax". max_iterations only
 * applies to benders (<= 0 keeps the default). */
RTE_API rte_status rte_flomore(const rte_instance* inst, const char* method, double beta,
                               int max_iterations, char** out_json);
/* variant: flow-adaptive, flow-static, scen-static. */
RTE_API rte_status rte_cvar(const rte_instance* inst, const char* variant, double beta,
                            char** out_json);

/* CSV with header model,k,objective,value,normalized. models and ks are
 * comma separated. */
RTE_API rte_status rte_report(const rte_instance* inst, const char* models, const char* ks,
                              const char* objective, const char* mode, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* RESILIENT_TE_H_ */
