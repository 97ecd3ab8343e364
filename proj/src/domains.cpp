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

#include "petriplan/domains.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace petriplan {

namespace {

VarId addVar(Problem& p, std::string name, VarKind kind,
             std::optional<Rational> lo = std::nullopt,
             std::optional<Rational> hi = std::nullopt) {
  const auto id = static_cast<VarId>(p.vars.size());
  p.vars.push_back({id, std::move(name), kind, std::move(lo), std::move(hi)});
  p.init.emplace_back(0);
  return id;
}

LinearRelation single(VarId v, RelOp op, const Rational& rhs) {
  return LinearRelation{{{v, Rational(1)}}, op, rhs};
}

std::string idx(int i) { return std::to_string(i); }

}  // namespace

Problem genCounters(int n, int maxVal, const std::vector<int>& goalVals) {
  if (n < 1 || maxVal < 1) {
    throw std::invalid_argument("gen_counters needs n >= 1 and maxVal >= 1");
  }
  if (goalVals.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("gen_counters: expected " + idx(n) +
                                " goal values, got " +
                                std::to_string(goalVals.size()));
  }
  Problem p;
  for (int i = 0; i < n; ++i) {
    addVar(p, "c" + idx(i), VarKind::Integer, Rational(0), Rational(maxVal));
  }
  for (int i = 0; i < n; ++i) {
    const auto v = static_cast<VarId>(i);
    p.actions.push_back({"inc" + idx(i),
                         {single(v, RelOp::Le, maxVal - 1)},
                         {NumDelta{v, 1}}});
    p.actions.push_back(
        {"dec" + idx(i), {single(v, RelOp::Ge, 1)}, {NumDelta{v, -1}}});
  }
  for (int i = 0; i < n; ++i) {
    p.goal.push_back(single(static_cast<VarId>(i), RelOp::Eq, goalVals[i]));
  }
  return p;
}

Problem genDelivery(int trucks, int packages, int locations, int capacity) {
  if (trucks < 1 || packages < 1 || locations < 1 || capacity < 1) {
    throw std::invalid_argument("gen_delivery parameters must be >= 1");
  }
  Problem p;
  std::vector<std::vector<VarId>> truckAt(trucks);
  std::vector<std::vector<VarId>> pkgAt(packages);
  std::vector<std::vector<VarId>> pkgIn(packages);
  std::vector<VarId> load;
  for (int t = 0; t < trucks; ++t) {
    for (int l = 0; l < locations; ++l) {
      truckAt[t].push_back(
          addVar(p, "truck_at_t" + idx(t) + "_l" + idx(l), VarKind::Boolean));
    }
  }
  for (int k = 0; k < packages; ++k) {
    for (int l = 0; l < locations; ++l) {
      pkgAt[k].push_back(
          addVar(p, "pkg_at_p" + idx(k) + "_l" + idx(l), VarKind::Boolean));
    }
    for (int t = 0; t < trucks; ++t) {
      pkgIn[k].push_back(
          addVar(p, "pkg_in_p" + idx(k) + "_t" + idx(t), VarKind::Boolean));
    }
  }
  for (int t = 0; t < trucks; ++t) {
    load.push_back(addVar(p, "load_t" + idx(t), VarKind::Integer, Rational(0),
                          Rational(capacity)));
  }

  for (int t = 0; t < trucks; ++t) {
    for (int l = 0; l < locations; ++l) {
      for (int m = 0; m < locations; ++m) {
        if (l == m) continue;
        p.actions.push_back(
            {"drive_t" + idx(t) + "_l" + idx(l) + "_l" + idx(m),
             {BoolLiteral{truckAt[t][l], true}},
             {BoolAssign{truckAt[t][l], false}, BoolAssign{truckAt[t][m], true}}});
      }
    }
  }
  for (int k = 0; k < packages; ++k) {
    for (int t = 0; t < trucks; ++t) {
      for (int l = 0; l < locations; ++l) {
        const std::string suffix = "_p" + idx(k) + "_t" + idx(t) + "_l" + idx(l);
        p.actions.push_back({"load" + suffix,
                             {BoolLiteral{truckAt[t][l], true},
                              BoolLiteral{pkgAt[k][l], true},
                              single(load[t], RelOp::Le, capacity - 1)},
                             {BoolAssign{pkgAt[k][l], false},
                              BoolAssign{pkgIn[k][t], true},
                              NumDelta{load[t], 1}}});
        p.actions.push_back({"unload" + suffix,
                             {BoolLiteral{truckAt[t][l], true},
                              BoolLiteral{pkgIn[k][t], true},
                              single(load[t], RelOp::Ge, 1)},
                             {BoolAssign{pkgIn[k][t], false},
                              BoolAssign{pkgAt[k][l], true},
                              NumDelta{load[t], -1}}});
      }
    }
  }

  for (int t = 0; t < trucks; ++t) p.init[truckAt[t][locations - 1]] = 1;
  for (int k = 0; k < packages; ++k) {
    p.init[pkgAt[k][k % locations]] = 1;
    p.goal.push_back(BoolLiteral{pkgAt[k][(k + 1) % locations], true});
  }
  return p;
}

Problem genRandomStrips(std::uint64_t seed, int nVars, int nActions) {
  if (nVars < 1 || nVars > 16 || nActions < 0) {
    throw std::invalid_argument("gen_random_strips needs 1 <= nVars <= 16");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](int n) { return static_cast<int>(rng() % n); };
  auto pickDistinct = [&](int count) {
    std::vector<int> all(nVars);
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < count; ++i) {
      std::swap(all[i], all[i + uniform(nVars - i)]);
    }
    all.resize(count);
    std::sort(all.begin(), all.end());
    return all;
  };

  Problem p;
  for (int i = 0; i < nVars; ++i) addVar(p, "v" + idx(i), VarKind::Boolean);
  for (int i = 0; i < nVars; ++i) p.init[i] = uniform(2);
  for (int a = 0; a < nActions; ++a) {
    Action act;
    act.name = "a" + idx(a);
    for (int v : pickDistinct(1 + uniform(std::min(3, nVars)))) {
      act.pre.push_back(BoolLiteral{static_cast<VarId>(v), uniform(2) == 1});
    }
    for (int v : pickDistinct(1 + uniform(std::min(3, nVars)))) {
      act.eff.push_back(BoolAssign{static_cast<VarId>(v), uniform(2) == 1});
    }
    p.actions.push_back(std::move(act));
  }
  for (int v : pickDistinct(1 + uniform(std::min(3, nVars)))) {
    p.goal.push_back(BoolLiteral{static_cast<VarId>(v), uniform(2) == 1});
  }
  return p;
}

Problem genRobot(int n) {
  if (n < 2) throw std::invalid_argument("gen_robot needs n >= 2");
  Problem p;
  std::vector<VarId> at;
  std::vector<VarId> visited;
  for (int i = 0; i < n; ++i) at.push_back(addVar(p, "at" + idx(i), VarKind::Boolean));
  for (int i = 0; i < n; ++i) {
    visited.push_back(addVar(p, "visited" + idx(i), VarKind::Boolean));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      p.actions.push_back({"move_" + idx(i) + "_" + idx(j),
                           {BoolLiteral{at[i], true}},
                           {BoolAssign{at[i], false}, BoolAssign{at[j], true},
                            BoolAssign{visited[j], true}}});
    }
  }
  p.init[at[0]] = 1;
  p.init[visited[0]] = 1;
  p.goal.push_back(BoolLiteral{visited[n - 1], true});
  return p;
}

std::size_t StateHash::operator()(const State& s) const {
  std::size_t h = s.size();
  for (const auto& x : s) {
    h ^= hashRational(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::optional<State> applyAction(const Problem& p, ActionId a,
                                 const State& s) {
  const Action& act = p.actions[a];
  if (!holdsAll(act.pre, s)) return std::nullopt;
  State next = s;
  for (const auto& e : act.eff) {
    if (const auto* b = std::get_if<BoolAssign>(&e)) {
      next[b->var] = b->value ? 1 : 0;
    } else {
      const auto& d = std::get<NumDelta>(e);
      next[d.var] += d.delta;
    }
  }
  return next;
}

namespace {

// Successors admitted by the oracle: within bounds and global constraints.
std::optional<State> successor(const Problem& p, ActionId a, const State& s) {
  auto next = applyAction(p, a, s);
  if (!next || !withinBounds(p, *next) || !holdsAll(p.constraints, *next)) {
    return std::nullopt;
  }
  return next;
}

struct Explorer {
  struct Node {
    State state;
    std::size_t parent;
    ActionId via;
    int depth;
  };
  std::vector<Node> nodes;
  std::unordered_map<State, std::size_t, StateHash> index;

  // Returns false once the state budget is exhausted.
  template <typename OnState>
  bool run(const Problem& p, std::size_t maxStates, OnState&& onState) {
    nodes.push_back({p.init, 0, 0, 0});
    index.emplace(p.init, 0);
    for (std::size_t head = 0; head < nodes.size(); ++head) {
      if (onState(head)) return true;
      for (ActionId a = 0; a < p.actions.size(); ++a) {
        auto next = successor(p, a, nodes[head].state);
        if (!next || index.count(*next)) continue;
        if (nodes.size() >= maxStates) return false;
        index.emplace(*next, nodes.size());
        nodes.push_back({std::move(*next), head, a, nodes[head].depth + 1});
      }
    }
    return true;
  }
};

}  // namespace

OracleResult oracleReachable(const Problem& p, std::size_t maxStates) {
  OracleResult out;
  Explorer ex;
  std::optional<std::size_t> hit;
  const bool finished = ex.run(p, maxStates, [&](std::size_t i) {
    if (holdsAll(p.goal, ex.nodes[i].state)) hit = i;
    return hit.has_value();
  });
  out.statesExplored = ex.nodes.size();
  if (hit) {
    out.status = OracleResult::Status::Reachable;
    for (std::size_t i = *hit; i != 0; i = ex.nodes[i].parent) {
      out.plan.push_back(p.actions[ex.nodes[i].via].name);
    }
    std::reverse(out.plan.begin(), out.plan.end());
    out.steps = static_cast<int>(out.plan.size());
  } else {
    out.status = finished ? OracleResult::Status::Unreachable
                          : OracleResult::Status::LimitExceeded;
  }
  return out;
}

PairStatus oraclePairReachable(const Problem& p, VarId u, VarId v,
                               std::size_t maxStates) {
  Explorer ex;
  bool both = false;
  const bool finished = ex.run(p, maxStates, [&](std::size_t i) {
    const State& s = ex.nodes[i].state;
    both = s[u] != 0 && s[v] != 0;
    return both;
  });
  if (both) return PairStatus::BothTrueReachable;
  return finished ? PairStatus::Never : PairStatus::Limit;
}

std::optional<std::vector<State>> reachableStates(const Problem& p,
                                                  std::size_t maxStates) {
  Explorer ex;
  if (!ex.run(p, maxStates, [](std::size_t) { return false; })) {
    return std::nullopt;
  }
  std::vector<State> out;
  out.reserve(ex.nodes.size());
  for (auto& n : ex.nodes) out.push_back(std::move(n.state));
  return out;
}

std::optional<std::vector<std::vector<State>>> serialLayers(
    const Problem& p, int maxSteps, std::size_t maxStates) {
  std::vector<std::vector<State>> layers{{p.init}};
  std::unordered_set<State, StateHash> seen{p.init};
  for (int k = 0; k < maxSteps; ++k) {
    std::unordered_set<State, StateHash> next;
    for (const auto& s : layers.back()) {
      for (ActionId a = 0; a < p.actions.size(); ++a) {
        if (auto t = successor(p, a, s)) {
          seen.insert(*t);
          next.insert(std::move(*t));
        }
      }
      if (seen.size() > maxStates) return std::nullopt;
    }
    std::vector<State> layer(next.begin(), next.end());
    std::sort(layer.begin(), layer.end());
    layers.push_back(std::move(layer));
  }
  return layers;
}

}  // namespace petriplan
