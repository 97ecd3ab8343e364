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

#include "petriplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <set>

namespace petriplan {

namespace {

using Clock = std::chrono::steady_clock;

double msSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace

Plan serialPlan(const std::vector<std::string>& actions) {
  Plan p;
  for (const auto& a : actions) p.steps.push_back({a});
  p.linearization = actions;
  p.horizon = static_cast<int>(actions.size());
  return p;
}

std::string_view statusName(PlanOutcome::Status s) {
  switch (s) {
    case PlanOutcome::Status::Plan:
      return "PLAN";
    case PlanOutcome::Status::Infeasible:
      return "INFEASIBLE";
    case PlanOutcome::Status::ResourceLimit:
      return "RESOURCE_LIMIT";
  }
  return "?";
}

Analysis analyzeProblem(const Problem& p, unsigned threads, bool gate) {
  Analysis a;
  auto t0 = Clock::now();
  a.net = buildNet(p);
  a.timings.petriMs = msSince(t0);

  t0 = Clock::now();
  a.relaxed = buildRelaxedSystem(a.net, p.constraints);
  a.goalStatus = checkGoalReachable(a.relaxed, p.goal);
  a.timings.relaxMs = msSince(t0);
  if (gate && a.goalStatus == GoalStatus::Infeasible) return a;

  t0 = Clock::now();
  a.invariants = synthesizeInvariants(a.relaxed, a.net, threads);
  a.timings.invariantsMs = msSince(t0);

  t0 = Clock::now();
  a.forward = propagateForward(p, a.net);
  a.backward = propagateBackward(p, a.net, p.goal);
  a.lowerBound = horizonLowerBound(a.forward, a.backward, p, a.net);
  a.timings.reachMs = msSince(t0);
  return a;
}

void reanalyzeGoal(Analysis& a, const Problem& p) {
  auto t0 = Clock::now();
  const GoalStatus status = checkGoalReachable(a.relaxed, p.goal);
  const double relaxMs = msSince(t0);
  t0 = Clock::now();
  ReachableSets backward = propagateBackward(p, a.net, p.goal);
  const int lb = horizonLowerBound(a.forward, backward, p, a.net);
  const double reachMs = msSince(t0);
  // Nothing below throws.
  a.net.goalMarking = p.goal;
  a.goalStatus = status;
  a.backward = std::move(backward);
  a.lowerBound = lb;
  a.timings = StageTimings{};
  a.timings.relaxMs = relaxMs;
  a.timings.reachMs = reachMs;
}

PlanSearch::PlanSearch(const Analysis& a,
                       const std::vector<Condition>& constraints,
                       SolverOptions opts)
    : solver_(opts),
      encoder_(a.net, constraints, a.invariants, a.forward) {
  encoder_.encodeInitial();
}

std::vector<Expr> PlanSearch::assumptionsFor(const Problem& p,
                                             const Analysis& a, int h) {
  std::vector<Expr> out;
  for (const auto& g : p.goal) out.push_back(encoder_.conditionAt(g, h));
  for (int d = 0; d <= h; ++d) {
    const StepSets& s = a.backward.at(d);
    const int k = h - d;
    if (d >= 1) {
      for (const auto& [v, value] : s.bindings) {
        out.push_back(encoder_.placeEquals(v, value, k));
      }
      for (VarId v = 0; v < s.intervals.size(); ++v) {
        if (!a.net.isBoolean(v) && !s.bindings.count(v)) {
          out.push_back(encoder_.placeWithin(v, s.intervals[v], k));
        }
      }
    }
    if (k >= 1) {
      for (ActionId t = 0; t < s.disabled.size(); ++t) {
        if (s.disabled[t]) out.push_back(mkNot(encoder_.fires(t, k - 1)));
      }
    }
  }
  // Constant parts decide on their own.
  std::vector<Expr> kept;
  for (auto& e : out) {
    if (e->isConst(true)) continue;
    if (e->isConst(false)) return {mkFalse()};
    kept.push_back(std::move(e));
  }
  return kept;
}

PlanOutcome PlanSearch::run(const Problem& p, const Analysis& a,
                            const PlannerOptions& opts) {
  PlanOutcome out;
  out.lowerBound = a.lowerBound;
  out.timings = a.timings;
  const auto start = Clock::now();
  const SolverStats before = solver_.stats();
  const std::size_t assertionsBefore = solver_.assertions().size();

  auto finish = [&](PlanOutcome& o) {
    o.solverChecks = solver_.stats().checks - before.checks;
    o.solverNodes = solver_.stats().nodes - before.nodes;
    o.solverAssertions = solver_.assertions().size() - assertionsBefore;
    o.timings.totalMs = o.timings.petriMs + o.timings.relaxMs +
                        o.timings.invariantsMs + o.timings.reachMs +
                        msSince(start);
  };

  if (a.goalStatus == GoalStatus::Infeasible) {
    out.status = PlanOutcome::Status::Infeasible;
    out.explanation = explainInfeasibility(a.relaxed, p.goal, opts.explain);
    finish(out);
    return out;
  }
  if (holdsAll(p.goal, p.init)) {
    out.status = PlanOutcome::Status::Plan;
    out.plan = Plan{};
    finish(out);
    return out;
  }

  try {
    for (int h = std::max(1, a.lowerBound); h <= opts.maxHorizon; ++h) {
      auto t0 = Clock::now();
      while (encoder_.steps() <= h) encoder_.encodeStep(solver_);
      out.timings.encodeMs += msSince(t0);

      t0 = Clock::now();
      const auto assumptions = assumptionsFor(p, a, h);
      const CheckResult res = solver_.checkAssuming(assumptions);
      out.timings.solveMs += msSince(t0);
      if (!res.sat()) continue;

      Plan plan = extractPlan(p, encoder_, res.model, h);
      const ValidationResult v = validatePlan(p, plan);
      if (!v.valid) {
        throw std::logic_error("extracted plan fails validation at " +
                               std::to_string(v.step) + ": " + v.reason);
      }
      out.status = PlanOutcome::Status::Plan;
      out.plan = std::move(plan);
      finish(out);
      return out;
    }
    out.status = PlanOutcome::Status::ResourceLimit;
    out.detail = "no plan within horizon " + std::to_string(opts.maxHorizon);
  } catch (const ResourceLimitError& e) {
    out.status = PlanOutcome::Status::ResourceLimit;
    out.detail = e.what();
  }
  finish(out);
  return out;
}

PlanOutcome plan(const Problem& p, const PlannerOptions& opts) {
  const Analysis a = analyzeProblem(p, opts.threads);
  PlanSearch search(a, p.constraints, opts.solver);
  return search.run(p, a, opts);
}

namespace {

// Does an effect of t help a precondition of u hold?
bool enables(const Problem& p, ActionId t, ActionId u) {
  for (const auto& e : p.actions[t].eff) {
    for (const auto& c : p.actions[u].pre) {
      if (const auto* b = std::get_if<BoolAssign>(&e)) {
        const auto* lit = std::get_if<BoolLiteral>(&c);
        if (lit && lit->var == b->var && lit->polarity == b->value) return true;
        continue;
      }
      const auto& d = std::get<NumDelta>(e);
      const auto* rel = std::get_if<LinearRelation>(&c);
      if (!rel) continue;
      for (const auto& term : rel->terms) {
        if (term.var != d.var) continue;
        const Rational change = term.coeff * d.delta;
        if ((rel->op == RelOp::Ge && change > 0) ||
            (rel->op == RelOp::Le && change < 0)) {
          return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

Plan extractPlan(const Problem& p, const HorizonEncoder& enc,
                 const Model& model, int horizon) {
  Plan out;
  out.horizon = horizon;
  for (int k = 0; k < horizon; ++k) {
    std::vector<ActionId> fired;
    for (ActionId t = 0; t < p.actions.size(); ++t) {
      const auto& v = enc.step(k + 1).transVars[t];
      if (v && model[*v] != 0) fired.push_back(t);
    }
    if (fired.empty()) continue;
    // Kahn's order over "t enables u", smallest id first; cycles fall back
    // to id order.
    std::map<ActionId, std::set<ActionId>> succ;
    std::map<ActionId, int> indeg;
    for (auto t : fired) indeg[t] = 0;
    for (auto t : fired) {
      for (auto u : fired) {
        if (t != u && enables(p, t, u) && succ[t].insert(u).second) ++indeg[u];
      }
    }
    std::priority_queue<ActionId, std::vector<ActionId>, std::greater<>> ready;
    for (auto [t, d] : indeg) {
      if (d == 0) ready.push(t);
    }
    std::vector<ActionId> order;
    std::set<ActionId> placed;
    while (order.size() < fired.size()) {
      if (ready.empty()) {
        for (auto t : fired) {
          if (!placed.count(t)) {
            ready.push(t);
            indeg[t] = 0;
            break;
          }
        }
      }
      const ActionId t = ready.top();
      ready.pop();
      if (placed.count(t)) continue;
      placed.insert(t);
      order.push_back(t);
      for (auto u : succ[t]) {
        if (!placed.count(u) && --indeg[u] == 0) ready.push(u);
      }
    }
    std::vector<std::string> names;
    for (auto t : order) names.push_back(p.actions[t].name);
    out.linearization.insert(out.linearization.end(), names.begin(),
                             names.end());
    out.steps.push_back(std::move(names));
  }
  return out;
}

namespace {

// Applies one action; an empty string means success.
std::string applyChecked(const Problem& p, const Action& a, State& s) {
  for (const auto& c : a.pre) {
    if (!holds(c, s)) return "precondition " + describeCondition(p, c);
  }
  for (const auto& e : a.eff) {
    if (const auto* b = std::get_if<BoolAssign>(&e)) {
      s[b->var] = b->value ? 1 : 0;
    } else {
      const auto& d = std::get<NumDelta>(e);
      s[d.var] += d.delta;
    }
  }
  if (!withinBounds(p, s)) return "bounds";
  for (const auto& c : p.constraints) {
    if (!holds(c, s)) return "constraint " + describeCondition(p, c);
  }
  return {};
}

}  // namespace

ValidationResult validatePlan(const Problem& p, const Plan& plan) {
  std::vector<const Action*> acts;
  for (const auto& name : plan.linearization) {
    const auto id = p.findAction(name);
    if (!id) {
      return {false, static_cast<int>(acts.size()), "unknown action " + name};
    }
    acts.push_back(&p.actions[*id]);
  }
  // The linearization must interleave the steps in order.
  std::size_t pos = 0;
  for (const auto& step : plan.steps) {
    std::vector<std::string> a(step), b;
    for (std::size_t i = 0; i < step.size() && pos + i < acts.size(); ++i) {
      b.push_back(plan.linearization[pos + i]);
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) {
      return {false, static_cast<int>(pos), "linearization does not match steps"};
    }
    pos += step.size();
  }
  if (!plan.steps.empty() && pos != acts.size()) {
    return {false, static_cast<int>(pos), "linearization does not match steps"};
  }

  State s = p.init;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    const std::string err = applyChecked(p, *acts[i], s);
    if (!err.empty()) return {false, static_cast<int>(i), err};
  }
  if (!holdsAll(p.goal, s)) return {false, -1, "goal"};

  // Every order of a small step must work from the step's start state.
  State start = p.init;
  pos = 0;
  for (const auto& step : plan.steps) {
    std::vector<std::size_t> idx(step.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = pos + i;
    if (step.size() <= 4) {
      std::vector<std::size_t> perm = idx;
      do {
        State t = start;
        for (auto i : perm) {
          const std::string err = applyChecked(p, *acts[i], t);
          if (!err.empty()) {
            return {false, static_cast<int>(i), "reordered step: " + err};
          }
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    for (auto i : idx) applyChecked(p, *acts[i], start);
    pos += step.size();
  }
  return {};
}

}  // namespace petriplan
