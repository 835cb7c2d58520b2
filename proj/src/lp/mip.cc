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
#include <memory>
#include <queue>
#include <vector>

#include "simplex_engine.h"

namespace rte {
namespace lp {
namespace {

// Live warm-start snapshots are capped; past this, children restart from
// the solved root relaxation instead.
constexpr size_t kSnapshotBudgetBytes = size_t{512} << 20;

struct Fix {
  int var;
  double value;
};

struct Node {
  long id = 0;
  double bound = 0.0;  // minimization form
  std::vector<Fix> fixes;
  std::shared_ptr<const SimplexEngine> warm;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

}  // namespace

Solution solve_mip(const LinearProgram& lp, const MipOptions& opts) {
  std::vector<int> binaries;
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (lp.variable(j).binary) binaries.push_back(j);
  }
  const double s = lp.objective_sense() == ObjSense::kMax ? -1.0 : 1.0;

  Solution best;
  best.status = Status::kInfeasible;
  double best_min = kInf;

  auto root = std::make_shared<SimplexEngine>(lp, opts.lp);
  const Status root_status = root->solve();
  if (root_status == Status::kUnbounded) {
    best.status = Status::kUnbounded;
    return best;
  }
  if (root_status == Status::kInfeasible) return best;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  size_t live_bytes = 0;
  long nodes = 0;

  // Root is processed inline; its solved engine seeds everything else.
  auto process = [&](SimplexEngine& engine, const std::vector<Fix>& fixes) {
    const double obj_min = s * engine.objective();
    if (obj_min >= best_min - opts.abs_gap) return;
    std::vector<double> x = engine.primal();
    int branch = -1;
    double most = opts.int_tol;
    for (int j : binaries) {
      const double f = std::fabs(x[j] - std::round(x[j]));
      if (f > most + 1e-15) {
        most = f;
        branch = j;
      }
    }
    if (branch < 0) {
      for (int j : binaries) x[j] = std::round(x[j]);
      best_min = obj_min;
      best.status = Status::kOptimal;
      best.x = std::move(x);
      best.objective = evaluate_objective(lp, best.x);
      return;
    }
    std::shared_ptr<const SimplexEngine> snap;
    const size_t bytes = sizeof(double) * static_cast<size_t>(lp.num_rows() + 1) *
                         static_cast<size_t>(lp.num_rows() + lp.num_variables());
    if (live_bytes + bytes <= kSnapshotBudgetBytes) {
      live_bytes += bytes;
      snap = std::shared_ptr<const SimplexEngine>(
          new SimplexEngine(std::move(engine)),
          [&live_bytes, bytes](const SimplexEngine* p) {
            live_bytes -= bytes;
            delete p;
          });
    } else {
      snap = root;
    }
    for (double v : {0.0, 1.0}) {
      Node child;
      child.id = next_id++;
      child.bound = obj_min;
      child.fixes = fixes;
      child.fixes.push_back({branch, v});
      child.warm = snap;
      open.push(std::move(child));
    }
  };

  {
    SimplexEngine engine = *root;
    ++nodes;
    process(engine, {});
  }

  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.bound >= best_min - opts.abs_gap) continue;
    if (nodes >= opts.node_budget) {
      best.nodes = nodes;
      throw BudgetExceeded("branch-and-bound node budget exhausted", best);
    }
    ++nodes;
    SimplexEngine engine = *node.warm;
    node.warm.reset();
    for (const Fix& f : node.fixes) engine.set_bounds(f.var, f.value, f.value);
    const Status st = engine.solve();
    if (st != Status::kOptimal) continue;
    process(engine, node.fixes);
  }
  best.nodes = nodes;
  return best;
}

}  // namespace lp
}  // namespace rte
