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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "rte/lp.h"

namespace rte::lp {
namespace {

// Best vertex of a small bounded LP: every choice of n tight constraints
// among rows and bounds, solved densely.
std::optional<double> brute_force(const LinearProgram& lp) {
  const int n = lp.num_variables();
  struct Plane {
    Eigen::VectorXd a;
    double b;
  };
  std::vector<Plane> planes;
  for (const Row& r : lp.rows()) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    for (const Term& t : r.terms) a(t.var) += t.coef;
    planes.push_back({a, r.rhs});
  }
  for (int j = 0; j < n; ++j) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
    a(j) = 1.0;
    planes.push_back({a, lp.variable(j).lower});
    planes.push_back({a, lp.variable(j).upper});
  }
  std::optional<double> best;
  const int m = static_cast<int>(planes.size());
  std::vector<int> pick(n);
  std::function<void(int, int)> rec = [&](int depth, int from) {
    if (depth == n) {
      Eigen::MatrixXd a(n, n);
      Eigen::VectorXd b(n);
      for (int i = 0; i < n; ++i) {
        a.row(i) = planes[pick[i]].a.transpose();
        b(i) = planes[pick[i]].b;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
      if (lu.rank() < n) return;
      const Eigen::VectorXd x = lu.solve(b);
      std::vector<double> xv(x.data(), x.data() + n);
      if (max_violation(lp, xv) > 1e-7) return;
      const double v = evaluate_objective(lp, xv);
      const bool better = !best || (lp.objective_sense() == ObjSense::kMin ? v < *best : v > *best);
      if (better) best = v;
      return;
    }
    for (int i = from; i < m; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

LinearProgram random_lp(std::mt19937_64& rng, int n, int m) {
  std::uniform_real_distribution<double> coef(-2.0, 3.0);
  std::uniform_int_distribution<int> sense(0, 2);
  LinearProgram lp;
  for (int j = 0; j < n; ++j) lp.add_variable("x" + std::to_string(j), 0.0, 1.0 + j);
  for (int i = 0; i < m; ++i) {
    std::vector<Term> terms;
    for (int j = 0; j < n; ++j) terms.push_back({j, std::round(coef(rng) * 2) / 2});
    lp.add_row(terms, static_cast<Sense>(sense(rng)), std::round(coef(rng) * 2) / 2);
  }
  std::vector<Term> obj;
  for (int j = 0; j < n; ++j) obj.push_back({j, coef(rng)});
  lp.set_objective(rng() % 2 ? ObjSense::kMax : ObjSense::kMin, obj);
  return lp;
}

TEST(Simplex, SmallMaximization) {
  // max 3x + 2y, x + y <= 4, x + 3y <= 7, x <= 3.
  LinearProgram lp;
  const int x = lp.add_variable("x"), y = lp.add_variable("y");
  lp.add_row({{x, 1}, {y, 1}}, Sense::kLe, 4);
  lp.add_row({{x, 1}, {y, 3}}, Sense::kLe, 7);
  lp.add_row({{x, 1}}, Sense::kLe, 3);
  lp.set_objective(ObjSense::kMax, {{x, 3}, {y, 2}});
  const Solution s = solve_lp(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, 11.0, 1e-9);
  EXPECT_NEAR(s.x[x], 3.0, 1e-9);
  EXPECT_NEAR(s.x[y], 1.0, 1e-9);
  ASSERT_EQ(s.duals.size(), 3u);
  EXPECT_NEAR(s.duals[0], 2.0, 1e-9);
  EXPECT_NEAR(s.duals[1], 0.0, 1e-9);
  EXPECT_NEAR(s.duals[2], 1.0, 1e-9);
}

TEST(Simplex, DetectsInfeasibleAndUnbounded) {
  LinearProgram inf;
  const int a = inf.add_variable("a");
  inf.add_row({{a, 1}}, Sense::kGe, 2);
  inf.add_row({{a, 1}}, Sense::kLe, 1);
  inf.set_objective(ObjSense::kMin, {{a, 1}});
  EXPECT_EQ(solve_lp(inf).status, Status::kInfeasible);

  LinearProgram unb;
  const int b = unb.add_variable("b");
  const int c = unb.add_variable("c", -kInf, kInf);
  unb.add_row({{b, 1}, {c, -1}}, Sense::kLe, 1);
  unb.set_objective(ObjSense::kMax, {{b, 1}});
  EXPECT_EQ(solve_lp(unb).status, Status::kUnbounded);
}

TEST(Simplex, FreeAndNegativeBounds) {
  // min x + y with x in [-3, 5], y free, x + y >= -1, y - x >= -2.
  LinearProgram lp;
  const int x = lp.add_variable("x", -3, 5);
  const int y = lp.add_variable("y", -kInf, kInf);
  lp.add_row({{x, 1}, {y, 1}}, Sense::kGe, -1);
  lp.add_row({{y, 1}, {x, -1}}, Sense::kGe, -2);
  lp.set_objective(ObjSense::kMin, {{x, 1}, {y, 1}});
  const Solution s = solve_lp(lp);
  ASSERT_EQ(s.status, Status::kOptimal);
  EXPECT_NEAR(s.objective, -1.0, 1e-9);
  EXPECT_LE(max_violation(lp, s.x), 1e-9);
}

TEST(Simplex, RejectsBinaries) {
  LinearProgram lp;
  lp.add_binary("z");
  EXPECT_THROW(solve_lp(lp), Error);
}

TEST(Simplex, RowWithUnknownVariableThrows) {
  LinearProgram lp;
  lp.add_variable("x");
  EXPECT_THROW(lp.add_row({{3, 1.0}}, Sense::kLe, 1), Error);
}

TEST(SimplexProperty, MatchesVertexEnumeration) {
  std::mt19937_64 rng(7);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 2;
    const LinearProgram lp = random_lp(rng, n, 2 + trial % 3);
    const Solution s = solve_lp(lp);
    const std::optional<double> best = brute_force(lp);
    if (!best) {
      EXPECT_EQ(s.status, Status::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(s.status, Status::kOptimal) << "trial " << trial;
    EXPECT_NEAR(s.objective, *best, 1e-7) << "trial " << trial;
    EXPECT_LE(max_violation(lp, s.x), 1e-7);
    ++optimal;
  }
  EXPECT_GT(optimal, 50);
}

TEST(SimplexProperty, DualsAreSubgradients) {
  // The row dual lies between the one-sided derivatives of the optimal
  // value in that row's right-hand side.
  std::mt19937_64 rng(11);
  const double h = 1e-4;
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProgram lp = random_lp(rng, 3, 3);
    const Solution s = solve_lp(lp);
    if (s.status != Status::kOptimal) continue;
    for (int i = 0; i < lp.num_rows(); ++i) {
      auto shifted = [&](double delta) {
        LinearProgram p;
        for (const Variable& v : lp.variables()) p.add_variable(v.name, v.lower, v.upper);
        for (int r = 0; r < lp.num_rows(); ++r) {
          const Row& row = lp.row(r);
          p.add_row(row.terms, row.sense, row.rhs + (r == i ? delta : 0.0));
        }
        p.set_objective(lp.objective_sense(), lp.objective());
        return solve_lp(p);
      };
      const Solution up = shifted(h), down = shifted(-h);
      if (up.status != Status::kOptimal || down.status != Status::kOptimal) continue;
      const double right = (up.objective - s.objective) / h;
      const double left = (s.objective - down.objective) / h;
      const double lo = std::min(left, right), hi = std::max(left, right);
      EXPECT_GE(s.duals[i], lo - 1e-5) << "trial " << trial << " row " << i;
      EXPECT_LE(s.duals[i], hi + 1e-5) << "trial " << trial << " row " << i;
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(SimplexProperty, Deterministic) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const LinearProgram lp = random_lp(rng, 3, 3);
    const Solution a = solve_lp(lp), b = solve_lp(lp);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.objective, b.objective);
    EXPECT_EQ(a.x, b.x);
  }
}

TEST(Mip, KnapsackMatchesEnumeration) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> w(1, 9);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 6;
    std::vector<int> weight(n), value(n);
    for (int j = 0; j < n; ++j) {
      weight[j] = w(rng);
      value[j] = w(rng);
    }
    const int cap = 15;
    LinearProgram lp;
    std::vector<Term> row, obj;
    for (int j = 0; j < n; ++j) {
      const int v = lp.add_binary("z" + std::to_string(j));
      row.push_back({v, static_cast<double>(weight[j])});
      obj.push_back({v, static_cast<double>(value[j])});
    }
    lp.add_row(row, Sense::kLe, cap);
    lp.set_objective(ObjSense::kMax, obj);
    int best = 0;
    for (int mask = 0; mask < (1 << n); ++mask) {
      int wt = 0, val = 0;
      for (int j = 0; j < n; ++j) {
        if (mask >> j & 1) {
          wt += weight[j];
          val += value[j];
        }
      }
      if (wt <= cap) best = std::max(best, val);
    }
    const Solution s = solve_mip(lp);
    ASSERT_EQ(s.status, Status::kOptimal);
    EXPECT_NEAR(s.objective, best, 1e-7);
    for (int j = 0; j < n; ++j) {
      EXPECT_TRUE(std::abs(s.x[j]) < 1e-6 || std::abs(s.x[j] - 1) < 1e-6);
    }

    LinearProgram relaxed;
    for (int j = 0; j < n; ++j) relaxed.add_variable("z" + std::to_string(j), 0, 1);
    relaxed.add_row(row, Sense::kLe, cap);
    relaxed.set_objective(ObjSense::kMax, obj);
    EXPECT_LE(s.objective, solve_lp(relaxed).objective + 1e-9);
  }
}

TEST(Mip, InfeasibleAndBudget) {
  LinearProgram lp;
  const int a = lp.add_binary("a"), b = lp.add_binary("b");
  lp.add_row({{a, 1}, {b, 1}}, Sense::kEq, 1.5);
  lp.set_objective(ObjSense::kMin, {{a, 1}});
  EXPECT_EQ(solve_mip(lp).status, Status::kInfeasible);

  LinearProgram big;
  std::vector<Term> row, obj;
  for (int j = 0; j < 14; ++j) {
    const int v = big.add_binary("z" + std::to_string(j));
    row.push_back({v, 2.0});
    obj.push_back({v, 1.0});
  }
  big.add_row(row, Sense::kLe, 13);
  big.set_objective(ObjSense::kMax, obj);
  MipOptions opts;
  opts.node_budget = 3;
  EXPECT_THROW(solve_mip(big, opts), BudgetExceeded);
}

TEST(LpText, WritesSections) {
  LinearProgram lp;
  const int x = lp.add_variable("x", 0, 4);
  const int z = lp.add_binary("z");
  lp.add_row({{x, 1}, {z, -2}}, Sense::kLe, 1, "cap");
  lp.set_objective(ObjSense::kMax, {{x, 1}});
  const std::string text = to_lp_text(lp);
  EXPECT_NE(text.find("Maximize"), std::string::npos);
  EXPECT_NE(text.find("Subject To"), std::string::npos);
  EXPECT_NE(text.find("cap_0:"), std::string::npos);
  EXPECT_NE(text.find("Binaries"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace rte::lp
