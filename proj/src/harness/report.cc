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

#include <cmath>
#include <sstream>

#include "rte/harness.h"
#include "rte/oracle.h"

namespace rte {

std::vector<ReportRow> run_report(const Network& net, const std::vector<Model>& models,
                                  const std::vector<int>& ks, ObjectiveKind objective,
                                  Mode mode) {
  std::vector<ReportRow> rows;
  for (int k : ks) {
    const double best = worst_case_optimal(net, k, objective).value;
    for (Model m : models) {
      RobustOptions opts;
      opts.model = m;
      opts.failure.k = k;
      opts.objective = objective;
      opts.mode = mode;
      ReportRow r;
      r.model = model_name(m);
      r.k = k;
      r.objective = objective_name(objective);
      r.value = solve_robust(net, opts).objective_value;
      // 0/0 counts as matching the optimum.
      r.normalized = best > 1e-12 ? r.value / best : (r.value > 1e-12 ? INFINITY : 1.0);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out.precision(10);
  out << "model,k,objective,value,normalized\n";
  for (const ReportRow& r : rows) {
    out << r.model << ',' << r.k << ',' << r.objective << ',' << r.value << ','
        << r.normalized << '\n';
  }
  return out.str();
}

}  // namespace rte
