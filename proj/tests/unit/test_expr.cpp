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
#include "petriplan/expr.hpp"

namespace petriplan {
namespace {

using testing::evalExpr;
using testing::forEachAssignment;
using testing::FormulaGen;
using testing::makeVars;
using testing::truthTableSat;

bool sameFunction(const Expr& a, const Expr& b, const VarTable& vars) {
  return !forEachAssignment(vars, vars.size(), [&](const auto& x) {
    return evalExpr(a, x) != evalExpr(b, x);
  });
}

// No negation above anything but a variable.
bool inNegationNormalForm(const Expr& e) {
  if (e->kind() == ExprKind::Not) return e->kids()[0]->kind() == ExprKind::Var;
  if (e->kind() == ExprKind::Implies) return false;
  for (const auto& k : e->kids()) {
    if (!inNegationNormalForm(k)) return false;
  }
  return true;
}

TEST(ExprTest, ConstructorsSimplify) {
  const Expr a = mkVar(0), b = mkVar(1);
  EXPECT_TRUE(mkAnd(a, mkFalse())->isConst(false));
  EXPECT_TRUE(mkOr(a, mkTrue())->isConst(true));
  EXPECT_TRUE(structurallyEqual(mkAnd(a, mkTrue()), a));
  EXPECT_TRUE(mkAnd(a, mkNot(a))->isConst(false));
  EXPECT_TRUE(mkOr(a, mkNot(a))->isConst(true));
  EXPECT_TRUE(structurallyEqual(mkNot(mkNot(a)), a));
  EXPECT_TRUE(structurallyEqual(mkAnd(a, a), a));
  EXPECT_EQ(mkAnd({a, mkAnd(b, a)})->kids().size(), 2u);
  EXPECT_TRUE(mkImplies(a, a)->isConst(true));
  EXPECT_TRUE(mkAnd(std::vector<Expr>{})->isConst(true));
  EXPECT_TRUE(mkOr(std::vector<Expr>{})->isConst(false));
}

TEST(ExprTest, CardinalityEdgeCases) {
  EXPECT_TRUE(mkAtMost({0, 1}, 2)->isConst(true));
  EXPECT_TRUE(mkAtMost({0, 1}, -1)->isConst(false));
  EXPECT_TRUE(mkExactly({0, 1}, 3)->isConst(false));
  EXPECT_EQ(mkAtMost({0, 1}, 0)->kind(), ExprKind::And);
  EXPECT_EQ(mkAtMost({2, 0, 1}, 1)->cardVars(), (std::vector<ExprVar>{0, 1, 2}));
}

TEST(ExprTest, LinRelNormalizes) {
  const Expr e = mkLinRel({{1, Rational(2)}, {0, Rational(1)}, {1, Rational(-2)}},
                          RelOp::Le, Rational(3));
  ASSERT_EQ(e->kind(), ExprKind::LinRel);
  ASSERT_EQ(e->terms().size(), 1u);
  EXPECT_EQ(e->terms()[0].var, 0u);
  EXPECT_TRUE(mkLinRel({}, RelOp::Le, Rational(0))->isConst(true));
  EXPECT_TRUE(mkLinRel({}, RelOp::Eq, Rational(1))->isConst(false));
}

TEST(PvalTest, BindsBooleans) {
  const Expr e = mkAnd(mkVar(0), mkVar(1));
  EXPECT_TRUE(structurallyEqual(pval(e, {{0, Rational(1)}}), mkVar(1)));
  EXPECT_TRUE(pval(e, {{0, Rational(0)}})->isConst(false));
  EXPECT_TRUE(structurallyEqual(pval(e, {}), e));
}

TEST(PvalTest, FoldsBoundTermsIntoRhs) {
  // 2a + b <= 5 with a = 2 leaves b <= 1.
  const Expr e = mkLinRel({{0, Rational(2)}, {1, Rational(1)}}, RelOp::Le, Rational(5));
  const Expr r = pval(e, {{0, Rational(2)}});
  ASSERT_EQ(r->kind(), ExprKind::LinRel);
  ASSERT_EQ(r->terms().size(), 1u);
  EXPECT_EQ(r->terms()[0].var, 1u);
  EXPECT_EQ(r->rhs(), Rational(1));
  EXPECT_TRUE(pval(e, {{0, Rational(2)}, {1, Rational(2)}})->isConst(false));
  EXPECT_TRUE(pval(e, {{0, Rational(2)}, {1, Rational(1)}})->isConst(true));
}

TEST(PvalTest, ShrinksCardinality) {
  const Expr e = mkAtMost({0, 1, 2}, 1);
  const Expr r = pval(e, {{0, Rational(1)}});
  EXPECT_TRUE(structurallyEqual(r, mkAnd(mkNot(mkVar(1)), mkNot(mkVar(2)))));
  EXPECT_TRUE(pval(e, {{0, Rational(1)}, {1, Rational(1)}})->isConst(false));
}

TEST(PsatTest, Examples) {
  const VarTable vars = makeVars(2, 1);
  const ExprVar n = 2;
  EXPECT_EQ(psat(mkAnd(mkVar(0), mkNot(mkVar(0))), vars), PsatResult::Unsat);
  EXPECT_EQ(psat(mkTrue(), vars), PsatResult::Sat);
  EXPECT_EQ(psat(mkFalse(), vars), PsatResult::Unsat);
  // n in [-2, 3]
  EXPECT_EQ(psat(mkLinRel({{n, Rational(1)}}, RelOp::Ge, Rational(5)), vars),
            PsatResult::Unsat);
  EXPECT_EQ(psat(mkAnd(mkLinRel({{n, Rational(1)}}, RelOp::Ge, Rational(1)),
                       mkLinRel({{n, Rational(1)}}, RelOp::Le, Rational(0))),
                 vars),
            PsatResult::Unsat);
  // b0 forces n >= 2 through the implication, then n <= 1 clashes.
  const Expr chain =
      mkAnd({mkVar(0),
             mkImplies(mkVar(0), mkLinRel({{n, Rational(1)}}, RelOp::Ge, Rational(2))),
             mkLinRel({{n, Rational(1)}}, RelOp::Le, Rational(1))});
  EXPECT_EQ(psat(chain, vars), PsatResult::Unsat);
  EXPECT_NE(psat(mkOr(mkVar(0), mkVar(1)), vars), PsatResult::Unsat);
}

TEST(PsatTest, ExplicitBoxesOverrideDeclared) {
  const VarTable vars = makeVars(0, 1);
  const Expr e = mkLinRel({{0, Rational(1)}}, RelOp::Ge, Rational(2));
  EXPECT_NE(psat(e, vars), PsatResult::Unsat);
  const std::vector<Interval> boxes = {{Rational(0), Rational(1)}};
  EXPECT_EQ(psat(e, vars, &boxes), PsatResult::Unsat);
}

TEST(NnfTest, DeMorgan) {
  const VarTable vars = makeVars(2, 0);
  const Expr a = mkVar(0), b = mkVar(1);
  EXPECT_TRUE(structurallyEqual(nnf(mkNot(mkAnd(a, b)), vars),
                                mkOr(mkNot(a), mkNot(b))));
  EXPECT_TRUE(structurallyEqual(nnf(mkNot(mkOr(a, b)), vars),
                                mkAnd(mkNot(a), mkNot(b))));
  EXPECT_TRUE(structurallyEqual(nnf(mkImplies(a, b), vars), mkOr(mkNot(a), b)));
}

TEST(NnfTest, ComplementsIntegerRelations) {
  const VarTable vars = makeVars(0, 1);
  const Expr le = mkLinRel({{0, Rational(1)}}, RelOp::Le, Rational(1));
  const Expr r = nnf(mkNot(le), vars);
  ASSERT_EQ(r->kind(), ExprKind::LinRel);
  EXPECT_EQ(r->op(), RelOp::Ge);
  EXPECT_EQ(r->rhs(), Rational(2));
  const Expr eq = mkLinRel({{0, Rational(1)}}, RelOp::Eq, Rational(1));
  EXPECT_EQ(nnf(mkNot(eq), vars)->kind(), ExprKind::Or);
}

TEST(ExprTest, SmtSymbolQuoting) {
  EXPECT_EQ(smtSymbol("at_0"), "at_0");
  EXPECT_EQ(smtSymbol("0x"), "|0x|");
  EXPECT_EQ(smtSymbol("a b"), "|a b|");
  EXPECT_EQ(smtSymbol("a|b"), "|ab|");
}

TEST(ExprTest, ScaleToIntegers) {
  std::vector<LinearTerm> terms = {{0, Rational(1, 2)}, {1, Rational(1, 3)}};
  Rational rhs(5, 6);
  rhs.canonicalize();
  for (auto& t : terms) t.coeff.canonicalize();
  scaleToIntegers(terms, rhs);
  EXPECT_EQ(terms[0].coeff, Rational(3));
  EXPECT_EQ(terms[1].coeff, Rational(2));
  EXPECT_EQ(rhs, Rational(5));
}

TEST(ExprTest, ExprVarsCollectsEverything) {
  const Expr e = mkAnd({mkVar(3), mkAtMost({1, 4}, 1),
                        mkLinRel({{0, Rational(1)}}, RelOp::Le, Rational(0))});
  EXPECT_EQ(exprVars(e), (std::vector<ExprVar>{0, 1, 3, 4}));
}

// ---------------------------------------------------------------------------
// Randomized properties against truth tables

class ExprPropertyTest : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(ExprPropertyTest, EvaluateMatchesReference) {
  const VarTable vars = makeVars(3, 1);
  FormulaGen gen(GetParam(), 3, 1);
  for (int i = 0; i < 20; ++i) {
    const Expr e = gen.formula(4);
    forEachAssignment(vars, vars.size(), [&](const auto& x) {
      EXPECT_EQ(evaluate(e, x), evalExpr(e, x));
      return false;
    });
  }
}

TEST_P(ExprPropertyTest, NnfIsEquivalentAndIdempotent) {
  const VarTable vars = makeVars(3, 1);
  FormulaGen gen(GetParam() + 1000, 3, 1);
  for (int i = 0; i < 20; ++i) {
    const Expr e = gen.formula(4);
    const Expr n = nnf(e, vars);
    EXPECT_TRUE(inNegationNormalForm(n)) << toString(n, vars);
    EXPECT_TRUE(sameFunction(e, n, vars)) << toString(e, vars);
    EXPECT_TRUE(structurallyEqual(nnf(n, vars), n));
  }
}

TEST_P(ExprPropertyTest, PvalAgreesOnExtensions) {
  const VarTable vars = makeVars(3, 1);
  FormulaGen gen(GetParam() + 2000, 3, 1);
  std::mt19937_64 rng(GetParam());
  for (int i = 0; i < 20; ++i) {
    const Expr e = gen.formula(4);
    BindingSet b;
    for (ExprVar v = 0; v < 3; ++v) {
      if (rng() % 2) b[v] = Rational(static_cast<int>(rng() % 2));
    }
    if (rng() % 2) b[3] = Rational(static_cast<int>(rng() % 6) - 2);
    const Expr r = pval(e, b);
    forEachAssignment(vars, vars.size(), [&](const auto& x) {
      for (const auto& [v, val] : b) {
        if (x[v] != val) return false;
      }
      EXPECT_EQ(evalExpr(r, x), evalExpr(e, x)) << toString(e, vars);
      return false;
    });
    // Fully bound formulas fold to a constant.
    if (b.size() == vars.size()) EXPECT_EQ(r->kind(), ExprKind::Const);
  }
}

TEST_P(ExprPropertyTest, PsatVerdictsAreSound) {
  const VarTable vars = makeVars(3, 2);
  FormulaGen gen(GetParam() + 3000, 3, 2);
  for (int i = 0; i < 20; ++i) {
    const Expr e = gen.formula(3);
    const bool sat = truthTableSat(e, vars, vars.size());
    const PsatResult r = psat(e, vars);
    if (r == PsatResult::Unsat) EXPECT_FALSE(sat) << toString(e, vars);
    if (r == PsatResult::Sat) EXPECT_TRUE(sat) << toString(e, vars);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, ExprPropertyTest, ::testing::Range<std::uint64_t>(1, 11));

}  // namespace
}  // namespace petriplan
