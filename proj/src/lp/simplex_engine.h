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

#ifndef RTE_SRC_LP_SIMPLEX_ENGINE_H_
#define RTE_SRC_LP_SIMPLEX_ENGINE_H_

#include <vector>

#include "rte/lp.h"

namespace rte {
namespace lp {

// Bounded primal simplex on a dense tableau. Each row i of the program
// becomes  a_i x + s_i = b_i  with a logical s_i whose bounds encode the
// row sense. Copyable, so branch-and-bound can snapshot a solved state and
// warm start children from it after a bound change.
class SimplexEngine {
 public:
  SimplexEngine(const LinearProgram& lp, const SimplexOptions& opts);

  Status solve();
  void set_bounds(int var, double lower, double upper);

  double objective() const;
  std::vector<double> primal() const;
  std::vector<double> duals() const;
  long iterations() const { return iterations_; }
  double lower(int var) const { return lo_[var]; }
  double upper(int var) const { return hi_[var]; }

 private:
  enum NonbasicState : char { kBasic, kAtLower, kAtUpper, kFreeZero };

  double& t(int i, int j) { return tab_[static_cast<size_t>(i) * ncols_ + j]; }
  double t(int i, int j) const {
    return tab_[static_cast<size_t>(i) * ncols_ + j];
  }

  Status iterate(long* pivots);
  bool basics_feasible() const;
  void compute_phase2_costs();
  void pivot(int r, int q);
  void move_entering(int q, double delta, double step);
  void place_nonbasic(int j);
  void refactor();
  double infeasibility(int i) const;

  SimplexOptions opts_;
  ObjSense sense_;
  double obj_constant_ = 0.0;
  int n_ = 0;      // structural variables
  int m_ = 0;      // kept rows
  int ncols_ = 0;  // n_ + m_
  std::vector<int> row_of_;            // kept row -> program row
  int program_rows_ = 0;
  bool trivially_infeasible_ = false;

  std::vector<std::vector<Term>> rows_;  // kept rows, structural part
  std::vector<double> b_;
  std::vector<double> cost_;  // minimization costs, size ncols_
  std::vector<double> lo_, hi_, x_;
  std::vector<NonbasicState> state_;
  std::vector<int> head_;  // basic column per row
  std::vector<int> pos_;   // row of a basic column, -1 if nonbasic
  std::vector<double> tab_;
  std::vector<double> d_;  // phase-2 reduced costs
  bool d_valid_ = false;
  bool bland_ = false;
  int degenerate_run_ = 0;
  long iterations_ = 0;
  long max_iterations_ = 0;
  long solve_start_ = 0;
  std::vector<int> nz_;  // scratch
};

}  // namespace lp
}  // namespace rte

#endif  // RTE_SRC_LP_SIMPLEX_ENGINE_H_
