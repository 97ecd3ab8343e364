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

// One-shot planning: preprocessing, the horizon loop, plan extraction and
// an independent plan validator.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "petriplan/encode.hpp"
#include "petriplan/problem.hpp"
#include "petriplan/reach.hpp"
#include "petriplan/relax.hpp"
#include "petriplan/solve.hpp"

namespace petriplan {

struct Plan {
  /// Parallel steps; empty steps are dropped.
  std::vector<std::vector<std::string>> steps;
  std::vector<std::string> linearization;
  int horizon = 0;

  bool operator==(const Plan&) const = default;
};

/// A serial plan: one action per step.
Plan serialPlan(const std::vector<std::string>& actions);

struct StageTimings {
  double petriMs = 0;
  double relaxMs = 0;
  double invariantsMs = 0;
  double reachMs = 0;
  double encodeMs = 0;
  double solveMs = 0;
  double totalMs = 0;
};

struct PlanOutcome {
  enum class Status { Plan, Infeasible, ResourceLimit };
  Status status = Status::ResourceLimit;
  std::optional<Plan> plan;
  std::optional<Explanation> explanation;
  std::string detail;
  int lowerBound = 0;
  StageTimings timings;
  /// Solver work of this call only.
  std::uint64_t solverChecks = 0;
  std::uint64_t solverNodes = 0;
  /// Persistent assertions added by this call.
  std::uint64_t solverAssertions = 0;
};

std::string_view statusName(PlanOutcome::Status s);

struct PlannerOptions {
  int maxHorizon = 64;
  unsigned threads = 0;
  SolverOptions solver;
  ExplainOptions explain;
};

/// Cached preprocessing of a problem.
struct Analysis {
  PetriNet net;
  RelaxedSystem relaxed;
  GoalStatus goalStatus = GoalStatus::PossiblyFeasible;
  std::vector<MutexGroup> invariants;
  ReachableSets forward;
  ReachableSets backward;
  int lowerBound = 0;
  StageTimings timings;
};

/// With `gate` set, stops after the relaxation when the goal is infeasible.
Analysis analyzeProblem(const Problem& p, unsigned threads = 0,
                        bool gate = true);

/// Refreshes the goal-dependent parts: relaxation verdict, backward sets and
/// the horizon bound.
void reanalyzeGoal(Analysis& a, const Problem& p);

/// Solver and encoder that outlive a single horizon loop.
class PlanSearch {
 public:
  PlanSearch(const Analysis& a, const std::vector<Condition>& constraints,
             SolverOptions opts = {});

  /// Horizon loop from the analysis' lower bound.
  PlanOutcome run(const Problem& p, const Analysis& a,
                  const PlannerOptions& opts);

  SolverState& solver() { return solver_; }
  const SolverState& solver() const { return solver_; }
  HorizonEncoder& encoder() { return encoder_; }
  const HorizonEncoder& encoder() const { return encoder_; }

 private:
  std::vector<Expr> assumptionsFor(const Problem& p, const Analysis& a, int h);

  SolverState solver_;
  HorizonEncoder encoder_;
};

PlanOutcome plan(const Problem& p, const PlannerOptions& opts = {});

/// Steps 0..horizon-1 of a model; within a step, enablers come first.
Plan extractPlan(const Problem& p, const HorizonEncoder& enc,
                 const Model& model, int horizon);

struct ValidationResult {
  bool valid = true;
  /// Position in the linearization, or -1 for the final goal check.
  int step = -1;
  std::string reason;
};

ValidationResult validatePlan(const Problem& p, const Plan& plan);

}  // namespace petriplan
