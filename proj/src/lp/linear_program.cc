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

#include "rte/lp.h"

namespace rte {
namespace lp {

LinExpr& LinExpr::add(const LinExpr& other, double scale) {
  for (const Term& t : other.terms) add(t.var, t.coef * scale);
  constant += other.constant * scale;
  return *this;
}

void LinExpr::normalize() {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> out;
  for (const Term& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(t);
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return t.coef == 0.0; }),
            out.end());
  terms = std::move(out);
}

int LinearProgram::add_variable(std::string name, double lower, double upper) {
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad bounds for variable " + name);
  }
  vars_.push_back({std::move(name), lower, upper, false});
  return num_variables() - 1;
}

int LinearProgram::add_binary(std::string name) {
  vars_.push_back({std::move(name), 0.0, 1.0, true});
  return num_variables() - 1;
}

int LinearProgram::add_row(std::vector<Term> terms, Sense sense, double rhs,
                           std::string name) {
  LinExpr e;
  e.terms = std::move(terms);
  for (const Term& t : e.terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row references undeclared variable");
    }
    if (!std::isfinite(t.coef)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite coefficient");
    }
  }
  if (std::isnan(rhs)) {
    throw Error(ErrorCode::kInvalidArgument, "NaN right-hand side");
  }
  e.normalize();
  rows_.push_back({std::move(name), std::move(e.terms), sense, rhs});
  return num_rows() - 1;
}

int LinearProgram::add_row(const LinExpr& lhs, Sense sense, double rhs,
                           std::string name) {
  return add_row(lhs.terms, sense, rhs - lhs.constant, std::move(name));
}

void LinearProgram::set_objective(ObjSense sense, std::vector<Term> terms,
                                  double constant) {
  LinExpr e;
  e.terms = std::move(terms);
  for (const Term& t : e.terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "objective references undeclared variable");
    }
  }
  e.normalize();
  obj_sense_ = sense;
  obj_ = std::move(e.terms);
  obj_constant_ = constant;
}

void LinearProgram::set_objective(ObjSense sense, const LinExpr& expr) {
  set_objective(sense, expr.terms, expr.constant);
}

void LinearProgram::set_bounds(int var, double lower, double upper) {
  if (lower > upper) {
    throw Error(ErrorCode::kInvalidArgument, "lower bound above upper bound");
  }
  vars_.at(var).lower = lower;
  vars_.at(var).upper = upper;
}

void LinearProgram::set_binary(int var, bool binary) {
  vars_.at(var).binary = binary;
  if (binary) {
    vars_[var].lower = 0.0;
    vars_[var].upper = 1.0;
  }
}

bool LinearProgram::has_binaries() const {
  return std::any_of(vars_.begin(), vars_.end(),
                     [](const Variable& v) { return v.binary; });
}

const char* status_name(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
  }
  return "?";
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) {
    const Variable& v = lp.variable(j);
    worst = std::max(worst, v.lower - x[j]);
    worst = std::max(worst, x[j] - v.upper);
  }
  for (const Row& r : lp.rows()) {
    double lhs = 0.0;
    for (const Term& t : r.terms) lhs += t.coef * x[t.var];
    if (r.sense != Sense::kGe) worst = std::max(worst, lhs - r.rhs);
    if (r.sense != Sense::kLe) worst = std::max(worst, r.rhs - lhs);
  }
  return worst;
}

double evaluate_objective(const LinearProgram& lp,
                          const std::vector<double>& x) {
  double v = lp.objective_constant();
  for (const Term& t : lp.objective()) v += t.coef * x[t.var];
  return v;
}

}  // namespace lp
}  // namespace rte
