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

#include "simplex_engine.h"

namespace rte {
namespace lp {
namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDropTol = 1e-14;
constexpr double kSingularTol = 1e-11;
constexpr int kRefactorEvery = 200;

}  // namespace

SimplexEngine::SimplexEngine(const LinearProgram& lp,
                             const SimplexOptions& opts)
    : opts_(opts), sense_(lp.objective_sense()) {
  obj_constant_ = lp.objective_constant();
  n_ = lp.num_variables();
  program_rows_ = lp.num_rows();
  for (int i = 0; i < lp.num_rows(); ++i) {
    const Row& r = lp.row(i);
    if (r.terms.empty()) {
      // Presolve: an empty row is either vacuous or proves infeasibility.
      bool ok = (r.sense == Sense::kLe && r.rhs >= -kPrimalTol) ||
                (r.sense == Sense::kGe && r.rhs <= kPrimalTol) ||
                (r.sense == Sense::kEq && std::fabs(r.rhs) <= kPrimalTol);
      if (!ok) trivially_infeasible_ = true;
      continue;
    }
    row_of_.push_back(i);
    rows_.push_back(r.terms);
    b_.push_back(r.rhs);
  }
  m_ = static_cast<int>(rows_.size());
  ncols_ = n_ + m_;

  const double s = sense_ == ObjSense::kMax ? -1.0 : 1.0;
  cost_.assign(ncols_, 0.0);
  for (const Term& t : lp.objective()) cost_[t.var] += s * t.coef;

  lo_.assign(ncols_, 0.0);
  hi_.assign(ncols_, 0.0);
  for (int j = 0; j < n_; ++j) {
    lo_[j] = lp.variable(j).lower;
    hi_[j] = lp.variable(j).upper;
  }
  for (int i = 0; i < m_; ++i) {
    switch (lp.row(row_of_[i]).sense) {
      case Sense::kLe: lo_[n_ + i] = 0.0; hi_[n_ + i] = kInf; break;
      case Sense::kGe: lo_[n_ + i] = -kInf; hi_[n_ + i] = 0.0; break;
      case Sense::kEq: lo_[n_ + i] = 0.0; hi_[n_ + i] = 0.0; break;
    }
  }

  tab_.assign(static_cast<size_t>(m_) * ncols_, 0.0);
  for (int i = 0; i < m_; ++i) {
    for (const Term& term : rows_[i]) t(i, term.var) += term.coef;
    t(i, n_ + i) = 1.0;
  }
  x_.assign(ncols_, 0.0);
  state_.assign(ncols_, kAtLower);
  pos_.assign(ncols_, -1);
  head_.assign(m_, -1);
  for (int j = 0; j < n_; ++j) place_nonbasic(j);
  for (int i = 0; i < m_; ++i) {
    double v = b_[i];
    for (const Term& term : rows_[i]) v -= term.coef * x_[term.var];
    x_[n_ + i] = v;
    head_[i] = n_ + i;
    pos_[n_ + i] = i;
    state_[n_ + i] = kBasic;
  }
  max_iterations_ = opts_.max_iterations > 0
                        ? opts_.max_iterations
                        : 50L * (m_ + ncols_) + 10000;
  d_.assign(ncols_, 0.0);
}

void SimplexEngine::place_nonbasic(int j) {
  if (std::isfinite(lo_[j])) {
    state_[j] = kAtLower;
    x_[j] = lo_[j];
  } else if (std::isfinite(hi_[j])) {
    state_[j] = kAtUpper;
    x_[j] = hi_[j];
  } else {
    state_[j] = kFreeZero;
    x_[j] = 0.0;
  }
}

void SimplexEngine::set_bounds(int var, double lower, double upper) {
  lo_[var] = lower;
  hi_[var] = upper;
  if (state_[var] == kBasic) return;  // phase 1 repairs any violation
  const double old = x_[var];
  if (state_[var] == kAtUpper && std::isfinite(upper)) {
    x_[var] = upper;
  } else {
    place_nonbasic(var);
  }
  const double delta = x_[var] - old;
  if (delta != 0.0) {
    for (int i = 0; i < m_; ++i) x_[head_[i]] -= t(i, var) * delta;
  }
}

double SimplexEngine::infeasibility(int i) const {
  const int j = head_[i];
  if (x_[j] < lo_[j] - kPrimalTol) return lo_[j] - x_[j];
  if (x_[j] > hi_[j] + kPrimalTol) return x_[j] - hi_[j];
  return 0.0;
}

bool SimplexEngine::basics_feasible() const {
  for (int i = 0; i < m_; ++i) {
    if (infeasibility(i) > 0.0) return false;
  }
  return true;
}

void SimplexEngine::compute_phase2_costs() {
  d_ = cost_;
  for (int i = 0; i < m_; ++i) {
    const double cb = cost_[head_[i]];
    if (cb == 0.0) continue;
    const double* row = &tab_[static_cast<size_t>(i) * ncols_];
    for (int k = 0; k < ncols_; ++k) d_[k] -= cb * row[k];
  }
  for (int i = 0; i < m_; ++i) d_[head_[i]] = 0.0;
  d_valid_ = true;
}

void SimplexEngine::pivot(int r, int q) {
  double* prow = &tab_[static_cast<size_t>(r) * ncols_];
  const double p = prow[q];
  nz_.clear();
  for (int k = 0; k < ncols_; ++k) {
    if (prow[k] != 0.0) {
      prow[k] /= p;
      if (std::fabs(prow[k]) < kDropTol) {
        prow[k] = 0.0;
      } else {
        nz_.push_back(k);
      }
    }
  }
  prow[q] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == r) continue;
    double* row = &tab_[static_cast<size_t>(i) * ncols_];
    const double f = row[q];
    if (f == 0.0) continue;
    for (int k : nz_) {
      double v = row[k] - f * prow[k];
      row[k] = std::fabs(v) < kDropTol ? 0.0 : v;
    }
    row[q] = 0.0;
  }
  if (d_valid_) {
    const double f = d_[q];
    if (f != 0.0) {
      for (int k : nz_) d_[k] -= f * prow[k];
    }
    d_[q] = 0.0;
  }
  const int leaving = head_[r];
  pos_[leaving] = -1;
  head_[r] = q;
  pos_[q] = r;
  state_[q] = kBasic;
}

void SimplexEngine::move_entering(int q, double delta, double step) {
  if (step == 0.0) return;
  x_[q] += delta * step;
  for (int i = 0; i < m_; ++i) {
    const double a = t(i, q);
    if (a != 0.0) x_[head_[i]] -= delta * a * step;
  }
}

Status SimplexEngine::iterate(long* pivots) {
  std::vector<double> d1;
  std::vector<double> weight(m_, 0.0);
  while (true) {
    if (iterations_ - solve_start_ >= max_iterations_) {
      throw Error(ErrorCode::kSolverStall,
                  "simplex iteration limit reached without convergence");
    }
    const bool phase1 = !basics_feasible();
    const double* d = nullptr;
    if (phase1) {
      d_valid_ = false;
      d1.assign(ncols_, 0.0);
      for (int i = 0; i < m_; ++i) {
        const int j = head_[i];
        weight[i] = 0.0;
        if (x_[j] < lo_[j] - kPrimalTol) weight[i] = -1.0;
        if (x_[j] > hi_[j] + kPrimalTol) weight[i] = 1.0;
        if (weight[i] == 0.0) continue;
        const double* row = &tab_[static_cast<size_t>(i) * ncols_];
        for (int k = 0; k < ncols_; ++k) d1[k] -= weight[i] * row[k];
      }
      d = d1.data();
    } else {
      if (!d_valid_) compute_phase2_costs();
      d = d_.data();
    }

    // Pricing.
    int q = -1;
    double delta = 0.0;
    double best = 0.0;
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == kBasic || lo_[j] == hi_[j]) continue;
      double dir = 0.0;
      const double dj = d[j];
      if (state_[j] == kAtLower && dj < -opts_.opt_tol) dir = 1.0;
      if (state_[j] == kAtUpper && dj > opts_.opt_tol) dir = -1.0;
      if (state_[j] == kFreeZero && std::fabs(dj) > opts_.opt_tol) {
        dir = dj < 0.0 ? 1.0 : -1.0;
      }
      if (dir == 0.0) continue;
      if (bland_) {
        q = j;
        delta = dir;
        break;
      }
      if (std::fabs(dj) > best) {
        best = std::fabs(dj);
        q = j;
        delta = dir;
      }
    }
    if (q < 0) return phase1 ? Status::kInfeasible : Status::kOptimal;

    // Ratio test. Basic i moves by -alpha * step.
    const double range = hi_[q] - lo_[q];
    int r = -1;
    double theta = kInf;
    bool leave_upper = false;
    if (!phase1 && !bland_) {
      double tmax = kInf;
      for (int i = 0; i < m_; ++i) {
        const double alpha = delta * t(i, q);
        if (std::fabs(alpha) <= opts_.pivot_tol) continue;
        const int j = head_[i];
        if (alpha > 0.0 && std::isfinite(lo_[j])) {
          tmax = std::min(tmax, (x_[j] - lo_[j] + kPrimalTol) / alpha);
        } else if (alpha < 0.0 && std::isfinite(hi_[j])) {
          tmax = std::min(tmax, (hi_[j] - x_[j] + kPrimalTol) / -alpha);
        }
      }
      double best_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = delta * t(i, q);
        if (std::fabs(alpha) <= opts_.pivot_tol) continue;
        const int j = head_[i];
        double ratio;
        bool up;
        if (alpha > 0.0 && std::isfinite(lo_[j])) {
          ratio = (x_[j] - lo_[j]) / alpha;
          up = false;
        } else if (alpha < 0.0 && std::isfinite(hi_[j])) {
          ratio = (hi_[j] - x_[j]) / -alpha;
          up = true;
        } else {
          continue;
        }
        if (ratio <= tmax && std::fabs(alpha) > best_alpha) {
          best_alpha = std::fabs(alpha);
          r = i;
          theta = std::max(0.0, ratio);
          leave_upper = up;
        }
      }
    } else {
      double best_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = delta * t(i, q);
        if (std::fabs(alpha) <= opts_.pivot_tol) continue;
        const int j = head_[i];
        const double v = x_[j];
        double ratio = kInf;
        bool up = false;
        if (alpha > 0.0) {
          if (v > hi_[j] + kPrimalTol) {
            ratio = (v - hi_[j]) / alpha;
            up = true;
          } else if (v >= lo_[j] - kPrimalTol && std::isfinite(lo_[j])) {
            ratio = (v - lo_[j]) / alpha;
          }
        } else {
          if (v < lo_[j] - kPrimalTol) {
            ratio = (lo_[j] - v) / -alpha;
          } else if (v <= hi_[j] + kPrimalTol && std::isfinite(hi_[j])) {
            ratio = (hi_[j] - v) / -alpha;
            up = true;
          }
        }
        if (!std::isfinite(ratio)) continue;
        ratio = std::max(0.0, ratio);
        bool take = false;
        if (r < 0 || ratio < theta - 1e-12) {
          take = true;
        } else if (ratio <= theta + 1e-12) {
          take = bland_ ? head_[i] < head_[r] : std::fabs(alpha) > best_alpha;
        }
        if (take) {
          r = i;
          theta = ratio;
          leave_upper = up;
          best_alpha = std::fabs(alpha);
        }
      }
    }

    if (r < 0 && !std::isfinite(range)) {
      if (phase1) {
        throw Error(ErrorCode::kSolverStall,
                    "phase 1 found no blocking row; numerical breakdown");
      }
      return Status::kUnbounded;
    }

    ++iterations_;
    ++*pivots;
    double step;
    if (std::isfinite(range) && range <= theta) {
      step = range;
      move_entering(q, delta, step);
      if (delta > 0.0) {
        state_[q] = kAtUpper;
        x_[q] = hi_[q];
      } else {
        state_[q] = kAtLower;
        x_[q] = lo_[q];
      }
    } else {
      step = theta;
      move_entering(q, delta, step);
      const int leaving = head_[r];
      pivot(r, q);
      if (leave_upper) {
        state_[leaving] = kAtUpper;
        x_[leaving] = hi_[leaving];
      } else {
        state_[leaving] = kAtLower;
        x_[leaving] = lo_[leaving];
      }
    }
    if (step <= 1e-12) {
      if (++degenerate_run_ > opts_.degenerate_switch) bland_ = true;
    } else {
      degenerate_run_ = 0;
      bland_ = false;
    }
  }
}

void SimplexEngine::refactor() {
  std::vector<int> basics(head_.begin(), head_.end());
  // Structural columns first: logicals are easy to place afterwards.
  std::stable_sort(basics.begin(), basics.end());
  std::fill(tab_.begin(), tab_.end(), 0.0);
  for (int i = 0; i < m_; ++i) {
    for (const Term& term : rows_[i]) t(i, term.var) += term.coef;
    t(i, n_ + i) = 1.0;
  }
  std::vector<double> rhs = b_;
  std::vector<char> assigned(m_, 0);
  std::vector<int> new_head(m_, -1);
  std::vector<char> is_new_basic(ncols_, 0);
  const bool had_d = d_valid_;
  d_valid_ = false;  // pivot() must not touch d_ here

  auto eliminate = [&](int r, int q) {
    const double p = t(r, q);
    double* prow = &tab_[static_cast<size_t>(r) * ncols_];
    for (int k = 0; k < ncols_; ++k) prow[k] /= p;
    rhs[r] /= p;
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* row = &tab_[static_cast<size_t>(i) * ncols_];
      const double f = row[q];
      if (f == 0.0) continue;
      for (int k = 0; k < ncols_; ++k) {
        if (prow[k] != 0.0) {
          double v = row[k] - f * prow[k];
          row[k] = std::fabs(v) < kDropTol ? 0.0 : v;
        }
      }
      row[q] = 0.0;
      rhs[i] -= f * rhs[r];
    }
  };

  std::vector<int> kicked;
  for (int j : basics) {
    int best_row = -1;
    double best = kSingularTol;
    for (int i = 0; i < m_; ++i) {
      if (assigned[i]) continue;
      if (std::fabs(t(i, j)) > best) {
        best = std::fabs(t(i, j));
        best_row = i;
      }
    }
    if (best_row < 0) {
      kicked.push_back(j);
      continue;
    }
    eliminate(best_row, j);
    assigned[best_row] = 1;
    new_head[best_row] = j;
    is_new_basic[j] = 1;
  }
  for (int i = 0; i < m_; ++i) {
    if (assigned[i]) continue;
    int best_col = -1;
    double best = 0.0;
    for (int k = 0; k < ncols_; ++k) {
      if (is_new_basic[k]) continue;
      if (std::fabs(t(i, k)) > best) {
        best = std::fabs(t(i, k));
        best_col = k;
      }
    }
    if (best_col < 0) {
      throw Error(ErrorCode::kSolverStall, "basis repair failed");
    }
    eliminate(i, best_col);
    assigned[i] = 1;
    new_head[i] = best_col;
    is_new_basic[best_col] = 1;
  }
  for (int j : kicked) place_nonbasic(j);
  std::fill(pos_.begin(), pos_.end(), -1);
  head_ = new_head;
  for (int i = 0; i < m_; ++i) {
    pos_[head_[i]] = i;
    state_[head_[i]] = kBasic;
  }
  for (int j = 0; j < ncols_; ++j) {
    if (pos_[j] < 0 && state_[j] == kBasic) place_nonbasic(j);
  }
  for (int i = 0; i < m_; ++i) {
    double v = rhs[i];
    const double* row = &tab_[static_cast<size_t>(i) * ncols_];
    for (int k = 0; k < ncols_; ++k) {
      if (pos_[k] < 0 && row[k] != 0.0) v -= row[k] * x_[k];
    }
    x_[head_[i]] = v;
  }
  if (had_d) compute_phase2_costs();
}

Status SimplexEngine::solve() {
  if (trivially_infeasible_) return Status::kInfeasible;
  solve_start_ = iterations_;
  long since_refactor = 0;
  Status s = Status::kInfeasible;
  for (int round = 0; round < 8; ++round) {
    long pivots = 0;
    s = iterate(&pivots);
    since_refactor += pivots;
    if (s == Status::kUnbounded) return s;
    if (round > 0 && pivots == 0) return s;
    // Cheap consistency check of the maintained primal against the rows.
    double resid = 0.0;
    for (int i = 0; i < m_; ++i) {
      double v = x_[n_ + i] - b_[i];
      for (const Term& term : rows_[i]) v += term.coef * x_[term.var];
      resid = std::max(resid, std::fabs(v) / (1.0 + std::fabs(b_[i])));
    }
    if (s == Status::kOptimal && resid <= kPrimalTol &&
        since_refactor < kRefactorEvery) {
      return s;
    }
    refactor();
    since_refactor = 0;
  }
  if (s == Status::kOptimal) return s;
  throw Error(ErrorCode::kSolverStall, "simplex did not settle after refactor");
}

double SimplexEngine::objective() const {
  const double s = sense_ == ObjSense::kMax ? -1.0 : 1.0;
  double v = 0.0;
  for (int j = 0; j < n_; ++j) v += cost_[j] * x_[j];
  return s * v + obj_constant_;
}

std::vector<double> SimplexEngine::primal() const {
  std::vector<double> x(x_.begin(), x_.begin() + n_);
  for (int j = 0; j < n_; ++j) x[j] = std::clamp(x[j], lo_[j], hi_[j]);
  return x;
}

std::vector<double> SimplexEngine::duals() const {
  std::vector<double> y(program_rows_, 0.0);
  std::vector<double> d = d_;
  if (!d_valid_) {
    d = cost_;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[head_[i]];
      if (cb == 0.0) continue;
      for (int k = 0; k < ncols_; ++k) d[k] -= cb * t(i, k);
    }
  }
  const double s = sense_ == ObjSense::kMax ? -1.0 : 1.0;
  for (int i = 0; i < m_; ++i) {
    const double yi = pos_[n_ + i] >= 0 ? 0.0 : -d[n_ + i];
    y[row_of_[i]] = s * yi;
  }
  return y;
}

Solution solve_lp(const LinearProgram& lp, const SimplexOptions& opts) {
  if (lp.has_binaries()) {
    throw Error(ErrorCode::kInvalidArgument,
                "solve_lp called on a program with binary variables");
  }
  SimplexEngine engine(lp, opts);
  Solution sol;
  sol.status = engine.solve();
  sol.iterations = static_cast<int>(engine.iterations());
  if (sol.status == Status::kOptimal) {
    sol.x = engine.primal();
    sol.objective = engine.objective();
    sol.duals = engine.duals();
    if (max_violation(lp, sol.x) > opts.feas_tol * 10) {
      throw Error(ErrorCode::kSolverStall,
                  "optimal basis violates rows beyond tolerance");
    }
  }
  return sol;
}

}  // namespace lp
}  // namespace rte
