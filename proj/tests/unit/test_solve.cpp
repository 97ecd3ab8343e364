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

#include "oracles.hpp"
#include "petriplan/solve.hpp"

namespace petriplan {
namespace {

using testing::FormulaGen;
using testing::makeVars;
using testing::truthTableSat;

Expr le(ExprVar v, long k) { return mkLinRel({{v, Rational(1)}}, RelOp::Le, Rational(k)); }
Expr ge(ExprVar v, long k) { return mkLinRel({{v, Rational(1)}}, RelOp::Ge, Rational(k)); }

// Loads a VarTable's declarations into a fresh solver.
SolverState solverFor(const VarTable& vars, SolverOptions opts = {}) {
  SolverState st(opts);
  for (ExprVar v = 0; v < vars.size(); ++v) {
    st.declare(vars[v].name, vars[v].sort, vars[v].lower, vars[v].upper);
  }
  return st;
}

TEST(SolverTest, DeclareAndRedeclare) {
  SolverState st;
  EXPECT_EQ(st.declare("x", Sort::Int, Rational(0), Rational(3)), 0u);
  EXPECT_EQ(st.declare("b", Sort::Bool), 1u);
  EXPECT_THROW(st.declare("x", Sort::Bool), std::invalid_argument);
  EXPECT_EQ(st.vars().size(), 2u);
  EXPECT_THROW(st.assertExpr(mkVar(5)), std::invalid_argument);
}

TEST(SolverTest, EmptyStoreIsSat) {
  SolverState st;
  EXPECT_TRUE(st.checkAssuming({}).sat());
  EXPECT_EQ(st.stats().checks, 1u);
}

TEST(SolverTest, AssumptionsAreRetracted) {
  SolverState st;
  const ExprVar x = st.declare("x", Sort::Int, Rational(0), Rational(5));
  st.assertExpr(ge(x, 2));
  EXPECT_FALSE(st.checkAssuming({le(x, 1)}).sat());
  const CheckResult r = st.checkAssuming({});
  ASSERT_TRUE(r.sat());
  EXPECT_GE(r.model[x], Rational(2));
  EXPECT_EQ(st.assertions().size(), 1u);
}

TEST(SolverTest, ComplexAssumptions) {
  SolverState st;
  const ExprVar a = st.declare("a", Sort::Bool);
  const ExprVar b = st.declare("b", Sort::Bool);
  st.assertExpr(mkOr(mkVar(a), mkVar(b)));
  EXPECT_FALSE(st.checkAssuming({mkAnd(mkNot(mkVar(a)), mkNot(mkVar(b)))}).sat());
  const CheckResult r = st.checkAssuming({mkImplies(mkVar(a), mkVar(b)), mkNot(mkVar(b))});
  EXPECT_FALSE(r.sat());
  EXPECT_TRUE(st.checkAssuming({mkNot(mkVar(a))}).sat());
}

TEST(SolverTest, IntegralityIsEnforced) {
  SolverState st;
  const ExprVar x = st.declare("x", Sort::Int, Rational(0), Rational(5));
  const ExprVar y = st.declare("y", Sort::Int, Rational(0), Rational(5));
  // 2x + 2y = 3 has rational but no integer solutions.
  st.assertExpr(mkLinRel({{x, Rational(2)}, {y, Rational(2)}}, RelOp::Eq, Rational(3)));
  EXPECT_FALSE(st.checkAssuming({}).sat());

  SolverState real;
  const ExprVar u = real.declare("u", Sort::Real, Rational(0), Rational(5));
  real.assertExpr(mkLinRel({{u, Rational(2)}}, RelOp::Eq, Rational(3)));
  const CheckResult r = real.checkAssuming({});
  ASSERT_TRUE(r.sat());
  Rational half(3, 2);
  half.canonicalize();
  EXPECT_EQ(r.model[u], half);
}

TEST(SolverTest, CardinalityAndModels) {
  SolverState st;
  for (int i = 0; i < 4; ++i) st.declare("b" + std::to_string(i), Sort::Bool);
  st.assertExpr(mkExactly({0, 1, 2, 3}, 2));
  st.assertExpr(mkNot(mkVar(0)));
  const CheckResult r = st.checkAssuming({mkVar(3)});
  ASSERT_TRUE(r.sat());
  EXPECT_EQ(r.model[0], Rational(0));
  EXPECT_EQ(r.model[3], Rational(1));
  EXPECT_EQ(r.model[1] + r.model[2], Rational(1));
}

TEST(SolverTest, Minimize) {
  SolverState st;
  const ExprVar x = st.declare("x", Sort::Int, Rational(0), Rational(10));
  const ExprVar b = st.declare("b", Sort::Bool);
  st.assertExpr(mkImplies(mkNot(mkVar(b)), ge(x, 7)));
  const CheckResult r = st.minimize({{x, Rational(1)}, {b, Rational(5)}});
  ASSERT_TRUE(r.sat());
  EXPECT_EQ(*r.objective, Rational(5));
  EXPECT_EQ(r.model[b], Rational(1));
  EXPECT_EQ(r.model[x], Rational(0));
}

TEST(SolverTest, NodeLimit) {
  SolverOptions opts;
  opts.nodeLimit = 1;
  SolverState st(opts);
  for (int i = 0; i < 8; ++i) st.declare("x" + std::to_string(i), Sort::Int, Rational(0), Rational(9));
  std::vector<LinearTerm> terms;
  for (ExprVar v = 0; v < 8; ++v) terms.push_back({v, Rational(2)});
  st.assertExpr(mkLinRel(terms, RelOp::Eq, Rational(31)));
  EXPECT_THROW(st.checkAssuming({}), NodeLimitError);
}

TEST(ExportTest, Smt2IsDeterministic) {
  auto build = [] {
    SolverState st;
    const ExprVar x = st.declare("x", Sort::Int, Rational(0), Rational(3));
    const ExprVar b = st.declare("go", Sort::Bool);
    st.assertExpr(mkImplies(mkVar(b), ge(x, 2)));
    return st;
  };
  SolverState a = build(), b = build();
  const std::string text = a.exportSmt2({mkVar(1)});
  EXPECT_EQ(text, b.exportSmt2({mkVar(1)}));
  EXPECT_NE(text.find("(declare-fun x () Int)"), std::string::npos) << text;
  EXPECT_NE(text.find("(declare-fun go () Bool)"), std::string::npos);
  EXPECT_NE(text.find("(push 1)\n(assert go)\n(check-sat)\n(pop 1)"), std::string::npos);
  EXPECT_EQ(a.exportLp(), b.exportLp());
  EXPECT_NE(a.exportLp().find("Subject To"), std::string::npos);
}

TEST(ExportTest, EmptyStore) {
  SolverState st;
  const std::string smt = st.exportSmt2();
  EXPECT_EQ(smt.find("assert"), std::string::npos) << smt;
  EXPECT_NE(smt.find("(check-sat)"), std::string::npos);
  EXPECT_NE(st.exportLp().find("End"), std::string::npos);
}

TEST(SolverTest, TranslationTracksAssertions) {
  SolverState st;
  const ExprVar x = st.declare("x", Sort::Int, Rational(0), Rational(10));
  const ExprVar v = st.declare("v", Sort::Bool);
  st.assertExpr(mkImplies(mkVar(v), le(x, 3)));
  const MilpConstraintSet m = st.translation(TranslationMode::BigM);
  EXPECT_EQ(m.vars.size(), 2u);
  EXPECT_TRUE(m.indicators.empty());
  EXPECT_FALSE(m.rows.empty());
  EXPECT_FALSE(st.translation(TranslationMode::Indicator).indicators.empty());
}

class SolvePropertyTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(SolvePropertyTest, MatchesEnumeration) {
  FormulaGen gen(GetParam(), 5, 2);
  const VarTable vars = makeVars(5, 2);
  for (int i = 0; i < 15; ++i) {
    const Expr e = gen.formula(3);
    SolverState st = solverFor(vars);
    st.assertExpr(e);
    const CheckResult r = st.checkAssuming({});
    EXPECT_EQ(r.sat(), truthTableSat(e, vars, vars.size())) << toString(e, vars);
    if (r.sat()) EXPECT_TRUE(testing::evalExpr(e, r.model)) << toString(e, vars);
  }
}

// Incremental checks with assumptions answer like fresh solvers.
TEST_P(SolvePropertyTest, IncrementalMatchesFresh) {
  FormulaGen gen(GetParam() + 100, 5, 2);
  const VarTable vars = makeVars(5, 2);
  SolverState inc = solverFor(vars);
  std::vector<Expr> asserted;
  for (int i = 0; i < 8; ++i) {
    const Expr assumption = gen.formula(2);
    SolverState fresh = solverFor(vars);
    for (const auto& a : asserted) fresh.assertExpr(a);
    fresh.assertExpr(assumption);
    EXPECT_EQ(inc.checkAssuming({assumption}).sat(), fresh.checkAssuming({}).sat());
    if (i % 3 == 0) {
      const Expr e = gen.formula(2);
      inc.assertExpr(e);
      asserted.push_back(e);
    }
  }
}

TEST_P(SolvePropertyTest, WarmStartDoesNotChangeVerdicts) {
  FormulaGen gen(GetParam() + 200, 5, 2);
  const VarTable vars = makeVars(5, 2);
  SolverOptions cold;
  cold.warmStart = false;
  SolverState a = solverFor(vars), b = solverFor(vars, cold);
  for (int i = 0; i < 10; ++i) {
    const Expr e = gen.formula(3);
    EXPECT_EQ(a.checkAssuming({e}).sat(), b.checkAssuming({e}).sat());
  }
  EXPECT_EQ(b.stats().warmStartHits, 0u);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SolvePropertyTest, ::testing::Range<std::uint64_t>(1, 11));

}  // namespace
}  // namespace petriplan
