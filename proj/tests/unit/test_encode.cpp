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

#include <set>

#include "oracles.hpp"
#include "petriplan/domains.hpp"
#include "petriplan/encode.hpp"
#include "petriplan/solve.hpp"

namespace petriplan {
namespace {

using testing::forEachAssignment;
using testing::FormulaGen;
using testing::makeVars;
using testing::solveMilp;
using testing::truthTableSat;

std::function<std::string()> namer() {
  auto n = std::make_shared<int>(0);
  return [n] { return "aux" + std::to_string((*n)++); };
}

bool rowHolds(const LpRow& r, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (const auto& t : r.terms) lhs += t.coeff * x[t.var];
  return compare(lhs, r.op, r.rhs);
}

bool litHolds(const Lit& l, const std::vector<Rational>& x) {
  return (x[l.var] != 0) == l.positive;
}

bool pgHolds(const PgResult& pg, const std::vector<Rational>& x) {
  for (const auto& c : pg.clauses) {
    if (std::none_of(c.begin(), c.end(), [&](const Lit& l) { return litHolds(l, x); })) {
      return false;
    }
  }
  for (const auto& r : pg.rows) {
    if (!rowHolds(r, x)) return false;
  }
  for (const auto& ind : pg.indicators) {
    if (litHolds(ind.guard, x) && !rowHolds(ind.row, x)) return false;
  }
  return true;
}

using Clauses = std::vector<Clause>;

TEST(PgTest, TopLevelConjunctionNeedsNoAux) {
  VarTable vars = makeVars(2, 0);
  const PgResult pg = pgTransform(mkAnd(mkVar(0), mkVar(1)), vars, namer());
  EXPECT_EQ(pg.clauses, (Clauses{{{0, true}}, {{1, true}}}));
  EXPECT_TRUE(pg.auxVars.empty());
  EXPECT_EQ(vars.size(), 2u);
}

TEST(PgTest, SingleComplexDisjunctFolds) {
  VarTable vars = makeVars(3, 0);
  const PgResult pg =
      pgTransform(mkOr(mkVar(0), mkAnd(mkVar(1), mkVar(2))), vars, namer());
  EXPECT_EQ(pg.clauses, (Clauses{{{0, true}, {1, true}}, {{0, true}, {2, true}}}));
  EXPECT_TRUE(pg.auxVars.empty());
}

TEST(PgTest, RelationBesideLiteralBecomesIndicator) {
  VarTable vars = makeVars(1, 1, 0, 10);
  const Expr rel = mkLinRel({{1, Rational(1)}}, RelOp::Le, Rational(3));
  const PgResult pg = pgTransform(mkOr(rel, mkVar(0)), vars, namer());
  // ¬p ⟹ x <= 3, the literal itself serving as the guard.
  ASSERT_EQ(pg.indicators.size(), 1u);
  EXPECT_EQ(pg.indicators[0].guard, (Lit{0, false}));
  EXPECT_EQ(pg.indicators[0].row.rhs, Rational(3));
  EXPECT_TRUE(pg.clauses.empty());
  EXPECT_TRUE(pg.auxVars.empty());
}

TEST(PgTest, TwoComplexDisjunctsGetNames) {
  VarTable vars = makeVars(4, 0);
  const Expr e = mkOr(mkAnd(mkVar(0), mkVar(1)), mkAnd(mkVar(2), mkVar(3)));
  const PgResult pg = pgTransform(e, vars, namer());
  EXPECT_EQ(pg.auxVars.size(), 2u);
  EXPECT_EQ(vars.size(), 6u);
  EXPECT_EQ(vars[4].name, "aux0");
  // Only the positive direction of each definition is emitted.
  EXPECT_EQ(pg.clauses.size(), 5u);
}

TEST(PgTest, UnconditionalRelationIsARow) {
  VarTable vars = makeVars(3, 0);
  const PgResult pg = pgTransform(mkAtMost({0, 1, 2}, 1), vars, namer());
  ASSERT_EQ(pg.rows.size(), 1u);
  EXPECT_EQ(pg.rows[0].op, RelOp::Le);
  EXPECT_EQ(pg.rows[0].rhs, Rational(1));
  EXPECT_EQ(pg.rows[0].terms.size(), 3u);
}

TEST(MilpTest, ClauseBecomesCoverRow) {
  // p ∨ ¬q  ->  p + (1 - q) >= 1, i.e. p - q >= 0.
  VarTable vars = makeVars(2, 0);
  const PgResult pg = pgTransform(mkOr(mkVar(0), mkNot(mkVar(1))), vars, namer());
  const MilpConstraintSet m = toMilp(pg, vars, TranslationMode::BigM);
  ASSERT_EQ(m.rows.size(), 1u);
  EXPECT_EQ(m.rows[0].op, RelOp::Ge);
  EXPECT_EQ(m.rows[0].rhs, Rational(0));
  EXPECT_EQ(m.rows[0].terms[0].coeff, Rational(1));
  EXPECT_EQ(m.rows[0].terms[1].coeff, Rational(-1));
  EXPECT_EQ(m.vars[0].kind, MilpVarKind::Binary);
}

TEST(MilpTest, BigMRowForBoxedIndicator) {
  // v ⟹ x <= 3 with x in [0, 10]: M = 2 * (10 - 3) = 14, row x + 14v <= 17.
  VarTable vars;
  const ExprVar x = vars.add("x", Sort::Int, Rational(0), Rational(10));
  const ExprVar v = vars.add("v", Sort::Bool);
  const LpRow row{{{x, Rational(1)}}, RelOp::Le, Rational(3)};
  EXPECT_EQ(bigM(row, vars), Rational(14));
  PgResult pg;
  pg.indicators.push_back({{v, true}, row});
  const MilpConstraintSet m = toMilp(pg, vars, TranslationMode::BigM);
  ASSERT_EQ(m.rows.size(), 1u);
  const auto& r = m.rows[0];
  EXPECT_EQ(r.op, RelOp::Le);
  EXPECT_EQ(r.rhs, Rational(17));
  ASSERT_EQ(r.terms.size(), 2u);
  EXPECT_EQ(r.terms[0].var, x);
  EXPECT_EQ(r.terms[0].coeff, Rational(1));
  EXPECT_EQ(r.terms[1].var, v);
  EXPECT_EQ(r.terms[1].coeff, Rational(14));
  EXPECT_TRUE(m.indicators.empty());
  EXPECT_EQ(toMilp(pg, vars, TranslationMode::Indicator).indicators.size(), 1u);
}

TEST(MilpTest, BigMNeedsFiniteBounds) {
  VarTable vars;
  const ExprVar x = vars.add("x", Sort::Int, Rational(0), std::nullopt);
  try {
    bigM({{{x, Rational(1)}}, RelOp::Le, Rational(3)}, vars);
    FAIL() << "expected UnboundedIndicatorError";
  } catch (const UnboundedIndicatorError& e) {
    EXPECT_EQ(e.variable(), "x");
  }
  EXPECT_EQ(bigM({{{x, Rational(1)}}, RelOp::Ge, Rational(3)}, vars), Rational(6));
}

TEST(MilpTest, IndicatorsBlockPlainLinProgram) {
  VarTable vars = makeVars(1, 1, 0, 5);
  const PgResult pg = pgTransform(
      mkImplies(mkVar(0), mkLinRel({{1, Rational(1)}}, RelOp::Ge, Rational(2))), vars,
      namer());
  EXPECT_THROW(toMilp(pg, vars, TranslationMode::Indicator).toLinProgram(),
               std::logic_error);
  EXPECT_NO_THROW(toMilp(pg, vars, TranslationMode::BigM).toLinProgram());
}

// On every integer point of the box, an inactive guard leaves the Big-M row
// slack and an active one makes it equivalent to the original.
TEST(MilpPropertyTest, BigMRowsAreAdequate) {
  std::mt19937_64 rng(3);
  auto pick = [&](int k) { return static_cast<long>(rng() % static_cast<unsigned>(k)); };
  static constexpr RelOp ops[] = {RelOp::Le, RelOp::Ge, RelOp::Eq};
  for (int round = 0; round < 200; ++round) {
    VarTable vars = makeVars(1, 2, -2, 3);
    const LpRow row{{{1, Rational(pick(7) - 3)}, {2, Rational(pick(7) - 3)}},
                    ops[pick(3)], Rational(pick(9) - 4)};
    const bool positive = pick(2) == 0;
    PgResult pg;
    pg.indicators.push_back({{0, positive}, row});
    const MilpConstraintSet m = toMilp(pg, vars, TranslationMode::BigM);
    forEachAssignment(vars, vars.size(), [&](const std::vector<Rational>& x) {
      const bool active = (x[0] != 0) == positive;
      const bool all = std::all_of(m.rows.begin(), m.rows.end(),
                                   [&](const LpRow& r) { return rowHolds(r, x); });
      EXPECT_EQ(all, active ? rowHolds(row, x) : true);
      return false;
    });
  }
}

class EncodePropertyTest : public ::testing::TestWithParam<std::uint64_t> {};

// The clause form is satisfiable on the extended variables exactly when the
// formula is, and every extended model restricts to a model.
TEST_P(EncodePropertyTest, PgIsEquisatisfiable) {
  FormulaGen gen(GetParam(), 4, 1);
  for (int i = 0; i < 25; ++i) {
    const Expr e = gen.formula(3);
    const VarTable base = makeVars(4, 1);
    VarTable ext = base;
    const PgResult pg = pgTransform(e, ext, namer());
    ASSERT_LE(pg.auxVars.size(), 10u);
    const bool want = truthTableSat(e, base, base.size());
    const bool got = forEachAssignment(ext, ext.size(), [&](const auto& x) {
      if (!pgHolds(pg, x)) return false;
      EXPECT_TRUE(testing::evalExpr(e, x)) << toString(e, base);
      return true;
    });
    EXPECT_EQ(got, want) << toString(e, base);
  }
}

TEST_P(EncodePropertyTest, MilpSolveMatchesTruthTable) {
  FormulaGen gen(GetParam() + 77, 5, 2);
  for (int i = 0; i < 10; ++i) {
    const Expr e = gen.formula(3);
    const VarTable base = makeVars(5, 2);
    const bool want = truthTableSat(e, base, base.size());
    for (const auto mode : {TranslationMode::Indicator, TranslationMode::BigM}) {
      VarTable ext = base;
      const PgResult pg = pgTransform(e, ext, namer());
      EXPECT_EQ(solveMilp(toMilp(pg, ext, mode)).sat(), want) << toString(e, base);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, EncodePropertyTest, ::testing::Range<std::uint64_t>(1, 9));

// ---------------------------------------------------------------------------
// Conflicts and steps

bool hasPair(const std::vector<std::pair<ActionId, ActionId>>& pairs, ActionId a, ActionId b) {
  return std::find(pairs.begin(), pairs.end(), std::pair{a, b}) != pairs.end() ||
         std::find(pairs.begin(), pairs.end(), std::pair{b, a}) != pairs.end();
}

TEST(ConflictTest, RobotMovesFromSameCellConflict) {
  const Problem p = genRobot(3);
  const auto c = transitionConflicts(buildNet(p));
  const auto id = [&](const std::string& n) {
    for (ActionId a = 0; a < p.actions.size(); ++a) {
      if (p.actions[a].name == n) return a;
    }
    ADD_FAILURE() << n;
    return ActionId{0};
  };
  EXPECT_TRUE(hasPair(c, id("move_0_1"), id("move_0_2")));
  EXPECT_FALSE(hasPair(c, id("move_0_1"), id("move_1_2")));
}

TEST(ConflictTest, IncrementAndDecrementCommute) {
  // Neither effect can falsify the other's guard.
  EXPECT_TRUE(transitionConflicts(buildNet(genCounters(1, 2, {2}))).empty());
}

TEST(ConflictTest, BoundPreconditionsKeepEffectsInBounds) {
  Problem p = genCounters(1, 2, {2});
  for (auto& a : p.actions) a.pre.clear();
  const PetriNet net = buildNet(p);
  for (ActionId a = 0; a < 2; ++a) {
    const auto pre = boundPreconditions(net, a);
    ASSERT_FALSE(pre.empty());
    for (int c = -1; c <= 3; ++c) {
      const State s = {Rational(c)};
      const bool ok = std::all_of(pre.begin(), pre.end(), [&](const LinearRelation& r) {
        Rational lhs = 0;
        for (const auto& t : r.terms) lhs += t.coeff * s[t.var];
        return compare(lhs, r.op, r.rhs);
      });
      const int next = c + (a == 0 ? 1 : -1);
      EXPECT_EQ(ok, next >= 0 && next <= 2) << "action " << a << " c=" << c;
    }
  }
}

TEST(ConflictTest, ExplicitGuardsAreNotDuplicated) {
  EXPECT_TRUE(boundPreconditions(buildNet(genCounters(1, 2, {2})), 0).empty());
}

TEST(StepTest, CountersGoalNeedsTwoSteps) {
  const Problem p = genCounters(1, 2, {2});
  const PetriNet net = buildNet(p);
  SolverState st;
  HorizonEncoder enc(net, {}, {}, propagateForward(p, net));
  const StepEncoding& s0 = enc.encodeInitial();
  EXPECT_TRUE(s0.placeVars[0].isConst());
  EXPECT_EQ(s0.placeVars[0].constant, Rational(0));
  EXPECT_EQ(enc.steps(), 1);
  EXPECT_EQ(st.vars().size(), 0u);

  const StepEncoding& s1 = enc.encodeStep(st);
  EXPECT_EQ(s1.step, 1);
  // dec cannot fire from c = 0.
  EXPECT_TRUE(s1.transVars[0].has_value());
  EXPECT_FALSE(s1.transVars[1].has_value());
  EXPECT_FALSE(st.checkAssuming({enc.conditionAt(p.goal[0], 1)}).sat());

  enc.encodeStep(st);
  const CheckResult r = st.checkAssuming({enc.conditionAt(p.goal[0], 2)});
  ASSERT_TRUE(r.sat());
  EXPECT_EQ(r.model[*enc.step(1).placeVars[0].var], Rational(1));
  EXPECT_EQ(r.model[*enc.step(2).placeVars[0].var], Rational(2));
  // Assumptions leave nothing behind.
  EXPECT_FALSE(st.checkAssuming({enc.conditionAt(p.goal[0], 1)}).sat());
  EXPECT_TRUE(st.checkAssuming({}).sat());
}

TEST(StepTest, ConstraintsApplyToExistingAndFutureSteps) {
  const Problem p = genCounters(1, 3, {2});
  const PetriNet net = buildNet(p);
  SolverState st;
  HorizonEncoder enc(net, {}, {}, propagateForward(p, net));
  enc.encodeInitial();
  enc.encodeStep(st);
  enc.encodeStep(st);
  enc.addConstraints(st, {LinearRelation{{{0, Rational(1)}}, RelOp::Le, Rational(1)}});
  EXPECT_FALSE(st.checkAssuming({enc.conditionAt(p.goal[0], 2)}).sat());
  enc.encodeStep(st);
  EXPECT_FALSE(st.checkAssuming({enc.conditionAt(p.goal[0], 3)}).sat());
}

TEST(StepTest, OneHotInvariantHoldsInModels) {
  const Problem p = genRobot(3);
  const PetriNet net = buildNet(p);
  const RelaxedSystem sys = buildRelaxedSystem(net);
  SolverState st;
  HorizonEncoder enc(net, {}, synthesizeInvariants(sys, net, 1), propagateForward(p, net));
  enc.encodeInitial();
  for (int k = 0; k < 3; ++k) enc.encodeStep(st);
  const CheckResult r = st.checkAssuming({enc.conditionAt(p.goal[0], 3)});
  ASSERT_TRUE(r.sat());
  for (int k = 1; k <= 3; ++k) {
    int on = 0;
    for (VarId v = 0; v < 3; ++v) {
      const PlaceValue& pv = enc.step(k).placeVars[v];
      on += (pv.isConst() ? pv.constant : r.model[*pv.var]) != 0;
    }
    EXPECT_EQ(on, 1) << "step " << k;
  }
}

}  // namespace
}  // namespace petriplan
