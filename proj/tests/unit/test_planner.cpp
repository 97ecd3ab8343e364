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


#include <gtest/gtest.h>

#include "petriplan/domains.hpp"
#include "petriplan/planner.hpp"

namespace petriplan {
namespace {

using Status = PlanOutcome::Status;

PlannerOptions opts(int maxHorizon) {
  PlannerOptions o;
  o.maxHorizon = maxHorizon;
  o.threads = 1;
  return o;
}

TEST(PlannerTest, CountersTwoSteps) {
  const Problem p = genCounters(1, 2, {2});
  const PlanOutcome r = plan(p, opts(8));
  ASSERT_EQ(r.status, Status::Plan);
  EXPECT_EQ(r.plan->horizon, 2);
  EXPECT_EQ(r.plan->linearization, (std::vector<std::string>{"inc0", "inc0"}));
  EXPECT_EQ(r.lowerBound, 2);
  EXPECT_TRUE(validatePlan(p, *r.plan).valid);
  EXPECT_GT(r.solverChecks, 0u);
}

TEST(PlannerTest, GoalAtInitGivesEmptyPlan) {
  const PlanOutcome r = plan(genCounters(1, 2, {0}), opts(8));
  ASSERT_EQ(r.status, Status::Plan);
  EXPECT_TRUE(r.plan->linearization.empty());
  EXPECT_EQ(r.plan->horizon, 0);
}

TEST(PlannerTest, InfeasibleGoalIsExplained) {
  const PlanOutcome r = plan(genCounters(2, 2, {1, 3}), opts(8));
  ASSERT_EQ(r.status, Status::Infeasible);
  ASSERT_TRUE(r.explanation.has_value());
  EXPECT_EQ(r.explanation->goalIndexSets, (std::vector<std::vector<std::size_t>>{{1}}));
  EXPECT_FALSE(r.plan.has_value());
  EXPECT_EQ(r.solverChecks, 0u);
}

TEST(PlannerTest, ShortHorizonIsAResourceLimit) {
  const PlanOutcome r = plan(genCounters(1, 5, {5}), opts(3));
  EXPECT_EQ(r.status, Status::ResourceLimit);
  EXPECT_FALSE(r.plan.has_value());
  EXPECT_FALSE(r.detail.empty());
}

TEST(PlannerTest, ParallelStepsShortenTheHorizon) {
  const Problem p = genCounters(2, 2, {2, 2});
  const PlanOutcome r = plan(p, opts(8));
  ASSERT_EQ(r.status, Status::Plan);
  EXPECT_EQ(r.plan->horizon, 2);
  EXPECT_EQ(r.plan->linearization.size(), 4u);
  EXPECT_TRUE(validatePlan(p, *r.plan).valid);
}

TEST(PlannerTest, ConstraintsAreRespected) {
  Problem p = genCounters(1, 4, {1});
  p.constraints.push_back(LinearRelation{{{0, Rational(1)}}, RelOp::Le, Rational(1)});
  const PlanOutcome ok = plan(p, opts(8));
  ASSERT_EQ(ok.status, Status::Plan);
  p.goal = {LinearRelation{{{0, Rational(1)}}, RelOp::Eq, Rational(3)}};
  EXPECT_EQ(plan(p, opts(8)).status, Status::Infeasible);
}

TEST(PlannerTest, DeliveryPlanIsValid) {
  const Problem p = genDelivery(1, 2, 3, 1);
  const PlanOutcome r = plan(p, opts(16));
  ASSERT_EQ(r.status, Status::Plan);
  const auto v = validatePlan(p, *r.plan);
  EXPECT_TRUE(v.valid) << v.reason;
  const auto o = oracleReachable(p, 500000);
  ASSERT_EQ(o.status, OracleResult::Status::Reachable);
  EXPECT_LE(r.plan->horizon, o.steps);
}

TEST(PlannerTest, StatusNames) {
  EXPECT_EQ(statusName(Status::Plan), "PLAN");
  EXPECT_EQ(statusName(Status::Infeasible), "INFEASIBLE");
  EXPECT_EQ(statusName(Status::ResourceLimit), "RESOURCE_LIMIT");
}

TEST(AnalysisTest, GateStopsAfterRelaxation) {
  const Problem p = genCounters(1, 2, {3});
  const Analysis gated = analyzeProblem(p, 1);
  EXPECT_EQ(gated.goalStatus, GoalStatus::Infeasible);
  EXPECT_TRUE(gated.forward.perStep.empty());
  const Analysis full = analyzeProblem(p, 1, false);
  EXPECT_EQ(full.goalStatus, GoalStatus::Infeasible);
  EXPECT_FALSE(full.forward.perStep.empty());
}

TEST(AnalysisTest, ReanalyzeGoalMatchesFreshAnalysis) {
  Problem p = genCounters(2, 3, {1, 1});
  Analysis a = analyzeProblem(p, 1, false);
  p.goal = genCounters(2, 3, {3, 2}).goal;
  reanalyzeGoal(a, p);
  const Analysis fresh = analyzeProblem(p, 1, false);
  EXPECT_EQ(a.lowerBound, fresh.lowerBound);
  EXPECT_EQ(a.lowerBound, 3);
  EXPECT_EQ(a.goalStatus, fresh.goalStatus);
  EXPECT_EQ(a.backward.perStep, fresh.backward.perStep);
  EXPECT_EQ(a.invariants, fresh.invariants);
}

// ---------------------------------------------------------------------------
// Validator

TEST(ValidatorTest, AcceptsGoodPlan) {
  const Problem p = genCounters(1, 2, {2});
  EXPECT_TRUE(validatePlan(p, serialPlan({"inc0", "inc0"})).valid);
}

TEST(ValidatorTest, RejectsUnmetPrecondition) {
  const Problem p = genCounters(1, 2, {0});
  const auto v = validatePlan(p, serialPlan({"dec0"}));
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.step, 0);
}

TEST(ValidatorTest, RejectsUnmetGoal) {
  const auto v = validatePlan(genCounters(1, 2, {2}), serialPlan({"inc0"}));
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.step, -1);
}

TEST(ValidatorTest, RejectsUnknownAction) {
  const auto v = validatePlan(genCounters(1, 2, {2}), serialPlan({"inc0", "jump"}));
  EXPECT_FALSE(v.valid);
  EXPECT_EQ(v.step, 1);
}

TEST(ValidatorTest, RejectsStepThatFailsWhenReordered) {
  // Both orders of {inc0, dec0} from c = 0 must work; dec0 first does not.
  const Problem p = genCounters(1, 2, {0});
  Plan bad;
  bad.steps = {{"inc0", "dec0"}};
  bad.linearization = {"inc0", "dec0"};
  bad.horizon = 1;
  EXPECT_FALSE(validatePlan(p, bad).valid);
}

TEST(ValidatorTest, RejectsMismatchedLinearization) {
  Plan bad;
  bad.steps = {{"inc0"}, {"inc0"}};
  bad.linearization = {"inc0"};
  bad.horizon = 2;
  EXPECT_FALSE(validatePlan(genCounters(1, 2, {1}), bad).valid);
}

TEST(ValidatorTest, RejectsConstraintViolation) {
  Problem p = genCounters(1, 3, {1});
  p.constraints.push_back(LinearRelation{{{0, Rational(1)}}, RelOp::Le, Rational(1)});
  EXPECT_FALSE(validatePlan(p, serialPlan({"inc0", "inc0", "dec0"})).valid);
}

// ---------------------------------------------------------------------------
// Soundness and completeness against breadth-first search

TEST(PlannerPropertyTest, AgreesWithOracleOnRandomStrips) {
  int plans = 0, unreachable = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Problem p = genRandomStrips(seed, 6, 8);
    const auto o = oracleReachable(p, 200000);
    ASSERT_NE(o.status, OracleResult::Status::LimitExceeded);
    const PlanOutcome r = plan(p, opts(12));
    if (o.status == OracleResult::Status::Reachable) {
      ASSERT_EQ(r.status, Status::Plan) << "seed " << seed;
      EXPECT_TRUE(validatePlan(p, *r.plan).valid) << "seed " << seed;
      EXPECT_LE(r.plan->horizon, o.steps);
      ++plans;
    } else {
      // Unreachable within any horizon: never a plan.
      EXPECT_NE(r.status, Status::Plan) << "seed " << seed;
      ++unreachable;
    }
  }
  EXPECT_GT(plans, 0);
}

}  // namespace
}  // namespace petriplan
