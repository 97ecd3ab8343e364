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


#include "petriplan/report.hpp"

#include <sstream>

namespace petriplan::json {

OrderedJson planToJson(const Plan& plan) {
  OrderedJson j;
  j["horizon"] = plan.horizon;
  j["steps"] = plan.steps;
  j["linearization"] = plan.linearization;
  return j;
}

OrderedJson explanationToJson(const Problem& p, const Explanation& e) {
  OrderedJson j;
  j["sets"] = e.goalIndexSets;
  OrderedJson conds = OrderedJson::array();
  for (const auto& set : e.goalIndexSets) {
    OrderedJson row = OrderedJson::array();
    for (auto i : set) row.push_back(describeCondition(p, p.goal[i]));
    conds.push_back(std::move(row));
  }
  j["conditions"] = std::move(conds);
  j["method"] =
      e.method == Explanation::Method::Mip ? "mip" : "enumeration";
  j["capped"] = e.capped;
  return j;
}

OrderedJson timingsToJson(const StageTimings& t) {
  OrderedJson j;
  j["petri_ms"] = t.petriMs;
  j["relax_ms"] = t.relaxMs;
  j["invariants_ms"] = t.invariantsMs;
  j["reach_ms"] = t.reachMs;
  j["encode_ms"] = t.encodeMs;
  j["solve_ms"] = t.solveMs;
  j["total_ms"] = t.totalMs;
  return j;
}

OrderedJson invariantsToJson(const Problem& p,
                             const std::vector<MutexGroup>& groups) {
  OrderedJson out = OrderedJson::array();
  for (const auto& g : groups) {
    OrderedJson j;
    j["kind"] =
        g.kind == MutexGroup::Kind::ExactlyOne ? "exactly_one" : "at_most_one";
    OrderedJson members = OrderedJson::array();
    for (auto v : g.members) members.push_back(p.vars[v].name);
    j["members"] = std::move(members);
    out.push_back(std::move(j));
  }
  return out;
}

namespace {

OrderedJson intervalToJson(const Interval& iv) {
  OrderedJson j = OrderedJson::array();
  j.push_back(iv.lo ? rationalToJson(*iv.lo) : OrderedJson(nullptr));
  j.push_back(iv.hi ? rationalToJson(*iv.hi) : OrderedJson(nullptr));
  return j;
}

}  // namespace

OrderedJson reachToJson(const Problem& p, const ReachableSets& sets) {
  OrderedJson j;
  j["direction"] =
      sets.direction == Direction::Forward ? "forward" : "backward";
  j["fixpoint_step"] = sets.fixpointStep;
  j["capped"] = sets.capped;
  OrderedJson steps = OrderedJson::array();
  for (const auto& s : sets.perStep) {
    OrderedJson step;
    OrderedJson bindings = OrderedJson::object();
    for (const auto& [v, value] : s.bindings) {
      bindings[p.vars[v].name] = p.isBoolean(v)
                                     ? OrderedJson(value != 0)
                                     : rationalToJson(value);
    }
    step["bindings"] = std::move(bindings);
    OrderedJson intervals = OrderedJson::object();
    for (VarId v = 0; v < s.intervals.size(); ++v) {
      if (!p.isBoolean(v) && !s.bindings.count(v)) {
        intervals[p.vars[v].name] = intervalToJson(s.intervals[v]);
      }
    }
    step["intervals"] = std::move(intervals);
    OrderedJson disabled = OrderedJson::array();
    for (ActionId t = 0; t < s.disabled.size(); ++t) {
      if (s.disabled[t]) disabled.push_back(p.actions[t].name);
    }
    step["disabled"] = std::move(disabled);
    steps.push_back(std::move(step));
  }
  j["steps"] = std::move(steps);
  return j;
}

OrderedJson outcomeDigest(const Problem& p, const PlanOutcome& o) {
  OrderedJson j;
  j["status"] = std::string(statusName(o.status));
  if (o.plan) j["plan"] = planToJson(*o.plan);
  if (o.explanation) j["explanation"] = explanationToJson(p, *o.explanation);
  if (!o.detail.empty()) j["detail"] = o.detail;
  return j;
}

OrderedJson outcomeReport(const Problem& p, const PlanOutcome& o) {
  OrderedJson j = outcomeDigest(p, o);
  j["lower_bound"] = o.lowerBound;
  j["timings"] = timingsToJson(o.timings);
  OrderedJson solver;
  solver["checks"] = o.solverChecks;
  solver["nodes"] = o.solverNodes;
  solver["assertions"] = o.solverAssertions;
  j["solver"] = std::move(solver);
  return j;
}

std::string outcomeText(const Problem& p, const PlanOutcome& o) {
  std::ostringstream out;
  switch (o.status) {
    case PlanOutcome::Status::Plan: {
      const Plan& plan = *o.plan;
      out << "plan: " << plan.linearization.size() << " actions in "
          << plan.steps.size() << " steps (horizon " << plan.horizon << ")\n";
      for (std::size_t k = 0; k < plan.steps.size(); ++k) {
        out << "  " << k << ":";
        for (const auto& a : plan.steps[k]) out << ' ' << a;
        out << '\n';
      }
      break;
    }
    case PlanOutcome::Status::Infeasible: {
      out << "infeasible: the relaxation rules out the goal\n";
      const auto& sets = o.explanation->goalIndexSets;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        out << "  conflict " << i + 1 << ":";
        for (auto g : sets[i]) {
          out << " [" << g << "] " << describeCondition(p, p.goal[g]) << ';';
        }
        out << '\n';
      }
      if (o.explanation->capped) out << "  (enumeration capped)\n";
      break;
    }
    case PlanOutcome::Status::ResourceLimit:
      out << "resource limit: " << o.detail << '\n';
      break;
  }
  return out.str();
}

}  // namespace petriplan::json
