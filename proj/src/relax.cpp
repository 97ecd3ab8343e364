// Copyright 2026 The petriplan Authors
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

#include "petriplan/relax.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "petriplan/solve.hpp"

namespace petriplan {

RelaxedSystem buildRelaxedSystem(const PetriNet& net,
                                 const std::vector<Condition>& constraints) {
  RelaxedSystem sys;
  sys.initMarking = net.initMarking;
  sys.constraints = constraints;
  LinProgram& lp = sys.lp;
  for (VarId i = 0; i < net.placeCount(); ++i) {
    const bool isBool = net.isBoolean(i);
    sys.boolPlace.push_back(isBool);
    sys.placeVar.push_back(lp.addVar("p_" + net.places[i].name,
                                     net.bounds[i].lo, net.bounds[i].hi));
    std::optional<Rational> plusCap = Rational(0);
    std::optional<Rational> minusCap = Rational(0);
    if (isBool && net.rebindToFalse[i]) plusCap.reset();
    if (isBool && net.rebindToTrue[i]) minusCap.reset();
    sys.slackPlus.push_back(
        lp.addVar("sp_" + net.places[i].name, Rational(0), plusCap));
    sys.slackMinus.push_back(
        lp.addVar("sm_" + net.places[i].name, Rational(0), minusCap));
  }
  for (ActionId t = 0; t < net.transitionCount(); ++t) {
    sys.firingVar.push_back(
        lp.addVar("t_" + net.transitions[t], Rational(0), std::nullopt));
  }
  std::vector<std::vector<LinearTerm>> rows(net.placeCount());
  for (VarId i = 0; i < net.placeCount(); ++i) {
    rows[i].push_back({sys.placeVar[i], Rational(1)});
    rows[i].push_back({sys.slackPlus[i], Rational(-1)});
    rows[i].push_back({sys.slackMinus[i], Rational(1)});
  }
  for (const auto& e : net.incidence.entries) {
    rows[e.place].push_back({sys.firingVar[e.transition], -e.value});
  }
  for (VarId i = 0; i < net.placeCount(); ++i) {
    sys.placeRow.push_back(lp.rows.size());
    lp.addRow(std::move(rows[i]), RelOp::Eq, net.initMarking[i]);
  }
  for (const auto& c : constraints) assertOnFinalMarking(lp, sys, c);
  return sys;
}

void assertOnFinalMarking(LinProgram& lp, const RelaxedSystem& sys,
                          const Condition& cond) {
  if (const auto* lit = std::get_if<BoolLiteral>(&cond)) {
    LpVar& v = lp.vars[sys.placeVar[lit->var]];
    const Rational value = lit->polarity ? 1 : 0;
    if (!v.lower || *v.lower < value) v.lower = value;
    if (!v.upper || *v.upper > value) v.upper = value;
    return;
  }
  const auto& rel = std::get<LinearRelation>(cond);
  std::vector<LinearTerm> terms;
  for (const auto& t : rel.terms) terms.push_back({sys.placeVar[t.var], t.coeff});
  lp.addRow(std::move(terms), rel.op, rel.rhs);
}

bool relaxedFeasible(const RelaxedSystem& sys,
                     const std::vector<Condition>& goal,
                     const std::vector<std::size_t>& subset) {
  const bool atInit = std::all_of(subset.begin(), subset.end(), [&](auto i) {
    return holds(goal[i], sys.initMarking);
  });
  if (atInit) return true;
  LinProgram lp = sys.lp;
  for (auto i : subset) assertOnFinalMarking(lp, sys, goal[i]);
  return lpFeasible(lp).status == LpResult::Status::Feasible;
}

GoalStatus checkGoalReachable(const RelaxedSystem& sys,
                              const std::vector<Condition>& goal) {
  std::vector<std::size_t> all(goal.size());
  for (std::size_t i = 0; i < goal.size(); ++i) all[i] = i;
  return relaxedFeasible(sys, goal, all) ? GoalStatus::PossiblyFeasible
                                         : GoalStatus::Infeasible;
}

namespace {

// Rows u and v alone, with only the transitions that touch them.
bool twoRowInfeasible(const RelaxedSystem& sys, VarId u, VarId v) {
  LinProgram lp;
  std::map<std::uint32_t, std::uint32_t> remap;
  auto mapVar = [&](std::uint32_t old) {
    auto it = remap.find(old);
    if (it != remap.end()) return it->second;
    const LpVar& src = sys.lp.vars[old];
    const auto id = lp.addVar(src.name, src.lower, src.upper);
    remap.emplace(old, id);
    return id;
  };
  for (VarId place : {u, v}) {
    std::vector<LinearTerm> terms;
    for (const auto& t : sys.lp.rows[sys.placeRow[place]].terms) {
      terms.push_back({mapVar(t.var), t.coeff});
    }
    lp.addRow(std::move(terms), RelOp::Eq, sys.initMarking[place]);
    LpVar& pv = lp.vars[mapVar(sys.placeVar[place])];
    pv.lower = Rational(1);
    pv.upper = Rational(1);
  }
  return lpFeasible(lp).status == LpResult::Status::Infeasible;
}

bool fullInfeasible(const RelaxedSystem& sys, VarId u, VarId v) {
  LinProgram lp = sys.lp;
  for (VarId place : {u, v}) {
    LpVar& pv = lp.vars[sys.placeVar[place]];
    pv.lower = Rational(1);
    if (pv.upper && *pv.upper < 1) return true;
    pv.upper = Rational(1);
  }
  return lpFeasible(lp).status == LpResult::Status::Infeasible;
}

}  // namespace

std::vector<MutexPair> findMutexPairs(const RelaxedSystem& sys,
                                      const PetriNet& net, unsigned threads) {
  std::vector<MutexPair> candidates;
  for (VarId u = 0; u < net.placeCount(); ++u) {
    if (!net.isBoolean(u)) continue;
    for (VarId v = u + 1; v < net.placeCount(); ++v) {
      if (!net.isBoolean(v)) continue;
      if (net.initMarking[u] != 0 && net.initMarking[v] != 0) continue;
      candidates.emplace_back(u, v);
    }
  }
  std::vector<char> mutex(candidates.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      const auto [u, v] = candidates[i];
      mutex[i] = twoRowInfeasible(sys, u, v) || fullInfeasible(sys, u, v);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(1, candidates.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<MutexPair> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (mutex[i]) out.push_back(candidates[i]);
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> greedyCliqueCover(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::map<std::uint32_t, std::set<std::uint32_t>> adj;
  for (const auto& [a, b] : edges) {
    if (a == b) continue;
    adj[a].insert(b);
    adj[b].insert(a);
  }
  std::set<std::uint32_t> assigned;
  std::set<std::vector<std::uint32_t>> cliques;
  for (const auto& [seed, _] : adj) {
    if (assigned.count(seed)) continue;
    std::vector<std::uint32_t> clique{seed};
    for (const auto& [cand, nbrs] : adj) {
      if (cand == seed) continue;
      const bool full = std::all_of(clique.begin(), clique.end(),
                                    [&](auto m) { return nbrs.count(m) > 0; });
      if (full) clique.push_back(cand);
    }
    std::sort(clique.begin(), clique.end());
    assigned.insert(clique.begin(), clique.end());
    cliques.insert(std::move(clique));
  }
  auto covered = [&](std::uint32_t a, std::uint32_t b) {
    for (const auto& c : cliques) {
      if (std::binary_search(c.begin(), c.end(), a) &&
          std::binary_search(c.begin(), c.end(), b)) {
        return true;
      }
    }
    return false;
  };
  for (const auto& [a, b] : edges) {
    if (a != b && !covered(a, b)) cliques.insert({std::min(a, b), std::max(a, b)});
  }
  return {cliques.begin(), cliques.end()};
}

std::vector<MutexGroup> buildMutexGroups(const std::vector<MutexPair>& pairs) {
  std::vector<MutexGroup> out;
  for (auto& clique : greedyCliqueCover(pairs)) {
    out.push_back({std::move(clique), MutexGroup::Kind::AtMostOne});
  }
  return out;
}

MutexGroup detectOneHot(const MutexGroup& group, const PetriNet& net,
                        const State& init) {
  MutexGroup out = group;
  const std::set<VarId> members(group.members.begin(), group.members.end());
  const bool someTrue = std::any_of(group.members.begin(), group.members.end(),
                                    [&](VarId v) { return init[v] != 0; });
  if (!someTrue) return out;
  for (ActionId t = 0; t < net.transitionCount(); ++t) {
    bool disables = false;
    bool enables = false;
    for (const auto& e : net.eff[t]) {
      const auto* b = std::get_if<BoolAssign>(&e);
      if (!b || !members.count(b->var)) continue;
      (b->value ? enables : disables) = true;
    }
    if (disables && !enables) return out;
  }
  out.kind = MutexGroup::Kind::ExactlyOne;
  return out;
}

std::vector<MutexGroup> synthesizeInvariants(const RelaxedSystem& sys,
                                             const PetriNet& net,
                                             unsigned threads) {
  std::vector<MutexGroup> groups =
      buildMutexGroups(findMutexPairs(sys, net, threads));
  for (auto& g : groups) g = detectOneHot(g, net, sys.initMarking);
  return groups;
}

namespace {

std::vector<std::size_t> without(const std::vector<std::size_t>& s,
                                 std::size_t drop) {
  std::vector<std::size_t> out;
  for (auto i : s) {
    if (i != drop) out.push_back(i);
  }
  return out;
}

// Shrinks an infeasible subset to a minimal one.
std::vector<std::size_t> deletionFilter(const RelaxedSystem& sys,
                                        const std::vector<Condition>& goal,
                                        std::vector<std::size_t> set) {
  for (std::size_t k = 0; k < set.size();) {
    auto smaller = without(set, set[k]);
    if (!relaxedFeasible(sys, goal, smaller)) {
      set = std::move(smaller);
    } else {
      ++k;
    }
  }
  return set;
}

bool isSubset(const std::vector<std::size_t>& small,
              const std::vector<std::size_t>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Explanation enumerate(const RelaxedSystem& sys,
                      const std::vector<Condition>& goal) {
  Explanation out;
  out.method = Explanation::Method::Enumeration;
  const std::size_t n = goal.size();
  if (!relaxedFeasible(sys, goal, {})) {
    out.goalIndexSets.push_back({});
    return out;
  }
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> comb(k);
    for (std::size_t i = 0; i < k; ++i) comb[i] = i;
    for (;;) {
      const bool pruned =
          std::any_of(out.goalIndexSets.begin(), out.goalIndexSets.end(),
                      [&](const auto& m) { return isSubset(m, comb); });
      if (!pruned && !relaxedFeasible(sys, goal, comb)) {
        out.goalIndexSets.push_back(comb);
      }
      std::size_t i = k;
      while (i > 0 && comb[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  std::sort(out.goalIndexSets.begin(), out.goalIndexSets.end());
  return out;
}

Expr goalExpr(const RelaxedSystem& sys, const Condition& cond) {
  if (const auto* lit = std::get_if<BoolLiteral>(&cond)) {
    const ExprVar p = sys.placeVar[lit->var];
    return lit->polarity ? mkLinRel({{p, Rational(1)}}, RelOp::Ge, 1)
                         : mkLinRel({{p, Rational(1)}}, RelOp::Le, 0);
  }
  const auto& rel = std::get<LinearRelation>(cond);
  std::vector<LinearTerm> terms;
  for (const auto& t : rel.terms) terms.push_back({sys.placeVar[t.var], t.coeff});
  return mkLinRel(std::move(terms), rel.op, rel.rhs);
}

Explanation disableMip(const RelaxedSystem& sys,
                       const std::vector<Condition>& goal,
                       const ExplainOptions& opts) {
  Explanation out;
  out.method = Explanation::Method::Mip;
  SolverState solver;
  // Relaxed variables keep their LP ids, so goal expressions map directly.
  for (const auto& v : sys.lp.vars) {
    solver.declare(v.name, Sort::Real, v.lower, v.upper);
  }
  for (const auto& row : sys.lp.rows) {
    solver.assertExpr(mkLinRel(row.terms, row.op, row.rhs));
  }
  std::vector<ExprVar> y;
  std::vector<LinearTerm> objective;
  for (std::size_t i = 0; i < goal.size(); ++i) {
    y.push_back(solver.declare("disable_" + std::to_string(i), Sort::Bool));
    solver.assertExpr(mkImplies(mkNot(mkVar(y.back())), goalExpr(sys, goal[i])));
    objective.push_back({y.back(), Rational(1)});
  }
  std::set<std::vector<std::size_t>> found;
  std::size_t rounds = 0;
  for (;;) {
    if (found.size() >= opts.mipCap || rounds >= opts.mipCap) {
      out.capped = true;
      break;
    }
    ++rounds;
    const CheckResult res = solver.minimize(objective);
    if (!res.sat()) break;
    std::vector<std::size_t> disabled;
    for (std::size_t i = 0; i < goal.size(); ++i) {
      if (res.model[y[i]] != 0) disabled.push_back(i);
    }
    if (disabled.empty()) break;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < goal.size(); ++i) {
      if (!std::binary_search(disabled.begin(), disabled.end(), i)) kept.push_back(i);
    }
    // A correction set, not a conflict: each member put back into the
    // kept conditions yields an infeasible set that shrinks to a conflict.
    for (auto i : disabled) {
      if (found.size() >= opts.mipCap) break;
      std::vector<std::size_t> start = kept;
      start.insert(std::upper_bound(start.begin(), start.end(), i), i);
      if (relaxedFeasible(sys, goal, start)) continue;
      found.insert(deletionFilter(sys, goal, std::move(start)));
    }
    std::vector<LinearTerm> block;
    for (auto i : disabled) block.push_back({y[i], Rational(1)});
    solver.assertExpr(mkLinRel(std::move(block), RelOp::Le,
                               static_cast<long>(disabled.size()) - 1));
  }
  out.goalIndexSets.assign(found.begin(), found.end());
  return out;
}

}  // namespace

Explanation explainInfeasibility(const RelaxedSystem& sys,
                                 const std::vector<Condition>& goal,
                                 const ExplainOptions& opts) {
  if (checkGoalReachable(sys, goal) == GoalStatus::PossiblyFeasible) {
    throw std::logic_error("explain_infeasibility: goal is relaxed-feasible");
  }
  if (!opts.forceMip && goal.size() <= opts.enumerationThreshold) {
    return enumerate(sys, goal);
  }
  if (!relaxedFeasible(sys, goal, {})) {
    Explanation out;
    out.method = Explanation::Method::Mip;
    out.goalIndexSets.push_back({});
    return out;
  }
  return disableMip(sys, goal, opts);
}

}  // namespace petriplan
