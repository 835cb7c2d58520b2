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

#include "rte/failure_sets.h"

#include <algorithm>
#include <map>
#include <set>

namespace rte {
namespace {

// Visits every subset of {0..n-1} with size <= k, by size then lexicographic.
template <typename F>
void for_each_subset(int n, int k, F&& visit) {
  k = std::clamp(k, 0, n);
  for (int size = 0; size <= k; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      visit(idx);
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

std::vector<int> all_indices(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

void check_groups(const std::vector<Condition>& groups) {
  for (const Condition& g : groups) {
    if (g.dead_links.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "empty shared-risk group " + g.id);
    }
    if (!g.alive_links.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "shared-risk group " + g.id + " must list dead links only");
    }
  }
}

// Links each restricted polytope needs, sorted by link index.
std::vector<int> relevant_links(const Network& net,
                                const std::vector<int>& tunnels,
                                const std::vector<int>& conditions) {
  std::set<int> links;
  for (int l : tunnels) links.insert(net.tunnel_links(l).begin(), net.tunnel_links(l).end());
  for (int c : conditions) {
    links.insert(net.condition_alive(c).begin(), net.condition_alive(c).end());
    links.insert(net.condition_dead(c).begin(), net.condition_dead(c).end());
  }
  return {links.begin(), links.end()};
}

std::vector<std::vector<int>> group_links(const Network& net,
                                          const std::vector<Condition>& groups) {
  std::vector<std::vector<int>> out;
  for (const Condition& g : groups) {
    std::vector<int> ls;
    for (const auto& id : g.dead_links) ls.push_back(net.link(id));
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    out.push_back(std::move(ls));
  }
  return out;
}

}  // namespace

int FailurePolytope::find(IndicatorKind kind, int index) const {
  for (size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].kind == kind && vars[i].index == index) return static_cast<int>(i);
  }
  return -1;
}

int FailurePolytope::add_var(IndicatorKind kind, int index) {
  vars.push_back({kind, index});
  return static_cast<int>(vars.size()) - 1;
}

bool FailurePolytope::contains(const std::vector<double>& point,
                               double tol) const {
  if (point.size() != vars.size()) return false;
  for (double v : point) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  for (const PolytopeRow& r : rows) {
    double lhs = 0.0;
    for (const auto& [i, a] : r.coefs) lhs += a * point[i];
    if (lhs > r.rhs + tol) return false;
    if (r.equality && lhs < r.rhs - tol) return false;
  }
  return true;
}

int max_link_sharing(const Network& net, const std::vector<int>& tunnels) {
  std::map<int, int> count;
  int best = 0;
  for (int l : tunnels) {
    for (int e : net.tunnel_links(l)) best = std::max(best, ++count[e]);
  }
  return best;
}

namespace {

// Link-level polytope over the x universe `links`.
FailurePolytope build_over_links(const Network& net, PolytopeKind kind,
                                 const FailureSpec& spec,
                                 const std::vector<int>& tunnels,
                                 const std::vector<int>& conditions,
                                 const std::vector<int>& links) {
  FailurePolytope P;
  for (int l : tunnels) P.add_var(IndicatorKind::kTunnel, l);
  for (int c : conditions) P.add_var(IndicatorKind::kCondition, c);

  if (kind == PolytopeKind::kFfc) {
    if (!conditions.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "the FFC polytope has no condition indicators");
    }
    const int p = max_link_sharing(net, tunnels);
    PolytopeRow r;
    for (size_t i = 0; i < tunnels.size(); ++i) r.coefs.push_back({static_cast<int>(i), 1.0});
    r.rhs = static_cast<double>(spec.k) * p;
    r.budget = true;
    P.budget = spec.k;
    if (!tunnels.empty()) P.rows.push_back(std::move(r));
    return P;
  }

  std::map<int, int> xpos;
  for (int e : links) xpos[e] = P.add_var(IndicatorKind::kLink, e);
  std::map<int, std::vector<int>> groups_of_link;

  if (!spec.srlg()) {
    PolytopeRow r;
    for (int e : links) r.coefs.push_back({xpos[e], 1.0});
    r.rhs = spec.k;
    r.budget = true;
    P.budget = spec.k;
    P.rows.push_back(std::move(r));
  } else {
    check_groups(spec.srlg_groups);
    const auto glinks = group_links(net, spec.srlg_groups);
    PolytopeRow budget;
    budget.budget = true;
    budget.rhs = spec.k_groups;
    P.budget = spec.k_groups;
    for (size_t g = 0; g < glinks.size(); ++g) {
      std::vector<int> touched;
      for (int e : glinks[g]) {
        if (xpos.count(e)) touched.push_back(e);
      }
      if (touched.empty()) continue;
      const int gp = P.add_var(IndicatorKind::kGroup, static_cast<int>(g));
      budget.coefs.push_back({gp, 1.0});
      for (int e : touched) {
        P.rows.push_back({{{gp, 1.0}, {xpos[e], -1.0}}, false, 0.0, false});
        groups_of_link[e].push_back(gp);
      }
    }
    P.rows.push_back(std::move(budget));
    for (int e : links) {
      PolytopeRow r;
      r.coefs.push_back({xpos[e], 1.0});
      for (int gp : groups_of_link[e]) r.coefs.push_back({gp, -1.0});
      P.rows.push_back(std::move(r));
    }
  }

  for (size_t i = 0; i < tunnels.size(); ++i) {
    const int yi = static_cast<int>(i);
    PolytopeRow cover;
    cover.coefs.push_back({yi, 1.0});
    for (int e : net.tunnel_links(tunnels[i])) {
      P.rows.push_back({{{xpos[e], 1.0}, {yi, -1.0}}, false, 0.0, false});
      cover.coefs.push_back({xpos[e], -1.0});
    }
    P.rows.push_back(std::move(cover));
    if (spec.srlg()) {
      // A group hitting the tunnel twice still only counts once.
      std::set<int> gs;
      for (int e : net.tunnel_links(tunnels[i])) {
        gs.insert(groups_of_link[e].begin(), groups_of_link[e].end());
      }
      PolytopeRow gcover;
      gcover.coefs.push_back({yi, 1.0});
      for (int gp : gs) gcover.coefs.push_back({gp, -1.0});
      P.rows.push_back(std::move(gcover));
    }
  }

  for (size_t i = 0; i < conditions.size(); ++i) {
    const int hi = static_cast<int>(tunnels.size() + i);
    const auto& alive = net.condition_alive(conditions[i]);
    const auto& dead = net.condition_dead(conditions[i]);
    if (alive.empty() && dead.size() == 1) {
      P.rows.push_back({{{hi, 1.0}, {xpos[dead[0]], -1.0}}, true, 0.0, false});
      continue;
    }
    PolytopeRow last;
    last.coefs.push_back({hi, -1.0});
    last.rhs = static_cast<double>(dead.size()) - 1.0;
    for (int e : alive) {
      P.rows.push_back({{{hi, 1.0}, {xpos[e], 1.0}}, false, 1.0, false});
      last.coefs.push_back({xpos[e], -1.0});
    }
    for (int e : dead) {
      P.rows.push_back({{{hi, 1.0}, {xpos[e], -1.0}}, false, 0.0, false});
      last.coefs.push_back({xpos[e], 1.0});
    }
    P.rows.push_back(std::move(last));
  }
  return P;
}

}  // namespace

FailurePolytope build_restricted_polytope(const Network& net, PolytopeKind kind,
                                          const FailureSpec& spec,
                                          const std::vector<int>& tunnels,
                                          const std::vector<int>& conditions) {
  return build_over_links(net, kind, spec, tunnels, conditions,
                          kind == PolytopeKind::kFfc
                              ? std::vector<int>{}
                              : relevant_links(net, tunnels, conditions));
}

FailurePolytope build_ffc_polytope(const Network& net, int k) {
  // Per-pair rows; variables are every tunnel.
  FailurePolytope P;
  P.budget = k;
  for (int l = 0; l < net.num_tunnels(); ++l) P.add_var(IndicatorKind::kTunnel, l);
  for (NodePair p : net.tunnel_pairs()) {
    const auto& ts = net.tunnels_of(p);
    PolytopeRow r;
    for (int l : ts) r.coefs.push_back({l, 1.0});
    r.rhs = static_cast<double>(k) * max_link_sharing(net, ts);
    r.budget = true;
    P.rows.push_back(std::move(r));
  }
  return P;
}

FailurePolytope build_exact_polytope(const Network& net, int k) {
  FailureSpec spec;
  spec.k = k;
  return build_over_links(net, PolytopeKind::kExact, spec,
                          all_indices(net.num_tunnels()), {},
                          all_indices(net.num_links()));
}

FailurePolytope build_hint_polytope(const Network& net, int k,
                                    const std::vector<int>& conditions) {
  FailureSpec spec;
  spec.k = k;
  return build_over_links(net, PolytopeKind::kHint, spec,
                          all_indices(net.num_tunnels()), conditions,
                          all_indices(net.num_links()));
}

FailurePolytope build_srlg_polytope(const Network& net,
                                    const std::vector<Condition>& groups,
                                    int k_groups) {
  if (groups.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no shared-risk groups given");
  }
  FailureSpec spec;
  spec.srlg_groups = groups;
  spec.k_groups = k_groups;
  return build_over_links(net, PolytopeKind::kExact, spec,
                          all_indices(net.num_tunnels()), {},
                          all_indices(net.num_links()));
}

std::vector<std::vector<int>> admissible_failure_sets(const Network& net,
                                                      const FailureSpec& spec,
                                                      double guard) {
  if (!spec.srlg()) return enumerate_failure_sets(net, spec.k, guard);
  check_groups(spec.srlg_groups);
  const auto glinks = group_links(net, spec.srlg_groups);
  const int n = static_cast<int>(glinks.size());
  if (count_failure_sets(n, spec.k_groups) > guard) {
    throw Error(ErrorCode::kScenarioBlowup, "group scenario count exceeds guard");
  }
  std::vector<std::vector<int>> out;
  std::set<std::vector<int>> seen;
  for_each_subset(n, spec.k_groups, [&](const std::vector<int>& idx) {
    std::set<int> links;
    for (int g : idx) links.insert(glinks[g].begin(), glinks[g].end());
    std::vector<int> s(links.begin(), links.end());
    if (seen.insert(s).second) out.push_back(std::move(s));
  });
  return out;
}

std::vector<std::vector<char>> enumerate_restricted_points(
    const Network& net, PolytopeKind kind, const FailureSpec& spec,
    const std::vector<int>& tunnels, const std::vector<int>& conditions,
    double guard) {
  std::vector<std::vector<char>> out;
  std::set<std::vector<char>> seen;
  const size_t width = tunnels.size() + conditions.size();
  if (kind == PolytopeKind::kFfc) {
    const int n = static_cast<int>(tunnels.size());
    const int cap = spec.k * max_link_sharing(net, tunnels);
    if (count_failure_sets(n, cap) > guard) {
      throw Error(ErrorCode::kScenarioBlowup, "tunnel pattern count exceeds guard");
    }
    for_each_subset(n, cap, [&](const std::vector<int>& idx) {
      std::vector<char> y(width, 0);
      for (int i : idx) y[i] = 1;
      out.push_back(std::move(y));
    });
    return out;
  }

  const std::vector<int> links = relevant_links(net, tunnels, conditions);
  auto emit = [&](const std::vector<int>& failed) {
    LinkMask mask(net.num_links(), 0);
    for (int e : failed) mask[e] = 1;
    std::vector<char> pt(width, 0);
    for (size_t i = 0; i < tunnels.size(); ++i) {
      pt[i] = tunnel_alive(net, tunnels[i], mask) ? 0 : 1;
    }
    for (size_t i = 0; i < conditions.size(); ++i) {
      pt[tunnels.size() + i] = condition_active(net, conditions[i], mask) ? 1 : 0;
    }
    if (seen.insert(pt).second) out.push_back(std::move(pt));
  };

  if (!spec.srlg()) {
    const int n = static_cast<int>(links.size());
    if (count_failure_sets(n, spec.k) > guard) {
      throw Error(ErrorCode::kScenarioBlowup, "scenario count exceeds guard");
    }
    for_each_subset(n, spec.k, [&](const std::vector<int>& idx) {
      std::vector<int> failed;
      for (int i : idx) failed.push_back(links[i]);
      emit(failed);
    });
    return out;
  }
  for (const auto& s : admissible_failure_sets(net, spec, guard)) emit(s);
  return out;
}

std::vector<TunnelFailurePattern> enumerate_patterns(
    const Network& net, int k, const std::vector<int>& conditions,
    double guard) {
  std::vector<TunnelFailurePattern> out;
  for (auto& s : enumerate_failure_sets(net, k, guard)) {
    const LinkMask mask = make_mask(net, s);
    TunnelFailurePattern p;
    p.tunnel_failed.resize(net.num_tunnels());
    for (int l = 0; l < net.num_tunnels(); ++l) {
      p.tunnel_failed[l] = tunnel_alive(net, l, mask) ? 0 : 1;
    }
    for (int c : conditions) {
      p.condition_active.push_back(condition_active(net, c, mask) ? 1 : 0);
    }
    p.scenario = std::move(s);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace rte
