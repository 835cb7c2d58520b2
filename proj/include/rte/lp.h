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

// Dense bounded-variable simplex and a best-bound branch-and-bound on top.
// Every model in the library is compiled to a LinearProgram.

#ifndef RTE_LP_H_
#define RTE_LP_H_

#include <limits>
#include <string>
#include <vector>

#include "rte/error.h"

namespace rte {
namespace lp {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { kLe, kEq, kGe };
enum class ObjSense { kMin, kMax };

struct Term {
  int var;
  double coef;
};

// Affine expression over LP variables; handy when assembling models.
struct LinExpr {
  std::vector<Term> terms;
  double constant = 0.0;

  LinExpr() = default;
  explicit LinExpr(double c) : constant(c) {}

  LinExpr& add(int var, double coef) {
    if (coef != 0.0) terms.push_back({var, coef});
    return *this;
  }
  LinExpr& add(const LinExpr& other, double scale = 1.0);
  // Merges duplicate variables and drops zeros; order by variable index.
  void normalize();
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool binary = false;
};

struct Row {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLe;
  double rhs = 0.0;
};

class LinearProgram {
 public:
  int add_variable(std::string name, double lower = 0.0, double upper = kInf);
  int add_binary(std::string name);
  // Rows referencing undeclared variables throw kInvalidArgument.
  int add_row(std::vector<Term> terms, Sense sense, double rhs,
              std::string name = {});
  // Moves the constant of `lhs` to the right-hand side.
  int add_row(const LinExpr& lhs, Sense sense, double rhs,
              std::string name = {});
  void set_objective(ObjSense sense, std::vector<Term> terms,
                     double constant = 0.0);
  void set_objective(ObjSense sense, const LinExpr& expr);
  void set_bounds(int var, double lower, double upper);
  void set_binary(int var, bool binary);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Variable& variable(int j) const { return vars_[j]; }
  const Row& row(int i) const { return rows_[i]; }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Row>& rows() const { return rows_; }
  ObjSense objective_sense() const { return obj_sense_; }
  const std::vector<Term>& objective() const { return obj_; }
  double objective_constant() const { return obj_constant_; }
  bool has_binaries() const;

 private:
  std::vector<Variable> vars_;
  std::vector<Row> rows_;
  std::vector<Term> obj_;
  double obj_constant_ = 0.0;
  ObjSense obj_sense_ = ObjSense::kMin;
};

enum class Status { kOptimal, kInfeasible, kUnbounded };
const char* status_name(Status status);

struct Solution {
  Status status = Status::kInfeasible;
  double objective = 0.0;
  std::vector<double> x;
  // Sensitivity of the optimal objective to each row's right-hand side
  // (d objective / d rhs), in the program's own objective sense. Empty for
  // MIP solves.
  std::vector<double> duals;
  int iterations = 0;
  long nodes = 0;  // branch-and-bound nodes explored
};

struct SimplexOptions {
  double feas_tol = 1e-7;      // final primal feasibility check
  double pivot_tol = 1e-9;
  double opt_tol = 1e-9;       // reduced-cost tolerance
  int degenerate_switch = 60;  // consecutive stalls before Bland's rule
  long max_iterations = 0;     // 0 = automatic
};

struct MipOptions {
  SimplexOptions lp;
  long node_budget = 100000;
  double int_tol = 1e-6;
  double abs_gap = 1e-9;
};

// Raised when the branch-and-bound node budget runs out. Carries the best
// integral solution found so far (status kInfeasible when there is none).
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& message, Solution incumbent)
      : Error(ErrorCode::kBudgetExceeded, message),
        incumbent_(std::move(incumbent)) {}
  const Solution& incumbent() const { return incumbent_; }

 private:
  Solution incumbent_;
};

// Solves the continuous relaxation. Binary flags are rejected.
Solution solve_lp(const LinearProgram& lp, const SimplexOptions& opts = {});

// Branch-and-bound over the binary variables.
Solution solve_mip(const LinearProgram& lp, const MipOptions& opts = {});

// CPLEX-LP-style text, for feeding the same program to an external solver.
std::string to_lp_text(const LinearProgram& lp);

// Maximum violation of rows and bounds by `x` (absolute).
double max_violation(const LinearProgram& lp, const std::vector<double>& x);

double evaluate_objective(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace lp
}  // namespace rte

#endif  // RTE_LP_H_
