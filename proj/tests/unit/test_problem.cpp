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

#include <functional>

#include "petriplan/domains.hpp"
#include "petriplan/problem.hpp"
#include "petriplan/problem_json.hpp"

namespace petriplan {
namespace {

const char* kMinimal = R"({
  "vars": [{"name": "p", "kind": "boolean"}],
  "actions": [],
  "init": {"p": true},
  "goal": [{"lit": ["p", true]}]
})";

bool mentions(const std::vector<Diagnostic>& diags, const std::string& text) {
  for (const auto& d : diags) {
    if (d.message.find(text) != std::string::npos) return true;
  }
  return false;
}

TEST(ProblemTest, ParsesMinimalDocument) {
  const Problem p = parseProblem(kMinimal);
  ASSERT_EQ(p.vars.size(), 1u);
  EXPECT_EQ(p.vars[0].kind, VarKind::Boolean);
  EXPECT_TRUE(p.actions.empty());
  EXPECT_EQ(p.init, State{Rational(1)});
  ASSERT_EQ(p.goal.size(), 1u);
  EXPECT_EQ(p.goal[0], Condition(BoolLiteral{0, true}));
}

TEST(ProblemTest, CountersRoundTripsStructurally) {
  const Problem gen = genCounters(1, 2, {2});
  const Problem back = parseProblem(serializeProblem(gen));
  EXPECT_EQ(back, gen);
  ASSERT_EQ(back.vars.size(), 1u);
  EXPECT_EQ(back.vars[0].kind, VarKind::Integer);
  EXPECT_EQ(back.vars[0].lower, Rational(0));
  EXPECT_EQ(back.vars[0].upper, Rational(2));
  EXPECT_EQ(back.actions.size(), 2u);
}

TEST(ProblemTest, UnknownGoalVariableIsNamed) {
  const std::string doc = R"({
    "vars": [{"name": "p", "kind": "boolean"}],
    "actions": [],
    "init": {"p": true},
    "goal": [{"lit": ["q", true]}]
  })";
  try {
    parseProblem(doc);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_TRUE(mentions(e.diagnostics(), "'q'"));
  }
}

TEST(ProblemTest, SerializationIsCanonical) {
  const Problem a = parseProblem(kMinimal);
  const Problem b = parseProblem(kMinimal);
  EXPECT_EQ(serializeProblem(a), serializeProblem(b));
  const Problem d = genDelivery(2, 2, 2, 1);
  const std::string once = serializeProblem(d);
  EXPECT_EQ(serializeProblem(parseProblem(once)), once);
  EXPECT_EQ(parseProblem(once), d);
}

TEST(ProblemTest, RoundTripOverGenerators) {
  std::vector<Problem> all = {genCounters(3, 4, {1, 2, 3}), genRobot(5),
                              genDelivery(2, 3, 3, 2)};
  for (std::uint64_t s = 1; s <= 20; ++s) all.push_back(genRandomStrips(s, 6, 8));
  for (const auto& p : all) EXPECT_EQ(parseProblem(serializeProblem(p)), p);
}

TEST(ProblemTest, FractionsSurviveRoundTrip) {
  Problem p = genCounters(1, 2, {1});
  p.vars[0].kind = VarKind::Real;
  p.goal[0] = LinearRelation{{{0, Rational(1)}}, RelOp::Le, Rational(3, 2)};
  EXPECT_EQ(parseProblem(serializeProblem(p)), p);
}

TEST(ValidationTest, ValidCountersHasNoDiagnostics) {
  EXPECT_TRUE(validateProblem(genCounters(1, 2, {2})).empty());
}

TEST(ValidationTest, InitOutOfBounds) {
  Problem p = genCounters(1, 2, {2});
  p.init[0] = 5;
  const auto diags = validateProblem(p);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0].path, "init.c0");
}

TEST(ValidationTest, DuplicateEffect) {
  Problem p = genCounters(1, 2, {2});
  p.actions[0].eff.push_back(NumDelta{0, Rational(1)});
  const auto diags = validateProblem(p);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_TRUE(mentions(diags, "duplicate effect"));
}

// One violation at a time; each must be reported.
TEST(ValidationTest, MutationsAreDetected) {
  const Problem base = genDelivery(1, 1, 2, 1);
  ASSERT_TRUE(validateProblem(base).empty());
  std::vector<std::function<void(Problem&)>> mutations = {
      [](Problem& p) { p.vars[5].lower = Rational(3); },            // lo > hi
      [](Problem& p) { p.vars[0].upper = Rational(1); },            // bool bound
      [](Problem& p) { p.goal.push_back(BoolLiteral{5, true}); },   // lit on num
      [](Problem& p) {
        p.goal.push_back(LinearRelation{{{0, Rational(1)}}, RelOp::Le, 0});
      },                                                            // rel on bool
      [](Problem& p) {
        p.goal.push_back(LinearRelation{{}, RelOp::Le, Rational(0)});
      },                                                            // no terms
      [](Problem& p) {
        p.goal.push_back(LinearRelation{{{5, Rational(0)}}, RelOp::Le, 0});
      },                                                            // zero coeff
      [](Problem& p) { p.actions[0].eff.push_back(BoolAssign{1, false}); },
      [](Problem& p) { p.actions[2].eff[2] = NumDelta{5, Rational(0)}; },
      [](Problem& p) { p.init[5] = 7; },
      [](Problem& p) { p.init.pop_back(); },
      [](Problem& p) { p.goal.push_back(BoolLiteral{99, true}); },
      [](Problem& p) { p.actions[1].name = p.actions[0].name; },
      [](Problem& p) { p.vars[1].name = p.vars[0].name; },
  };
  for (std::size_t i = 0; i < mutations.size(); ++i) {
    Problem p = base;
    mutations[i](p);
    EXPECT_FALSE(validateProblem(p).empty()) << "mutation " << i;
  }
}

TEST(ParseTest, RejectsMalformedDocuments) {
  EXPECT_THROW(parseProblem("{"), ParseError);
  EXPECT_THROW(parseProblem(R"({"vars": [], "actions": [], "init": {},
                                "goal": [{"or": []}]})"),
               ParseError);
  EXPECT_THROW(parseProblem(R"({"vars": [{"name": "x", "kind": "integer"}],
                                "actions": [], "init": {"x": 0},
                                "goal": [{"rel": {"terms": [[1, "x"]],
                                          "op": "<", "rhs": 1}}]})"),
               ParseError);
}

TEST(ProblemTest, HoldsAndBounds) {
  const Problem p = genCounters(1, 2, {2});
  EXPECT_FALSE(holdsAll(p.goal, p.init));
  EXPECT_TRUE(holdsAll(p.goal, State{Rational(2)}));
  EXPECT_TRUE(withinBounds(p, State{Rational(2)}));
  EXPECT_FALSE(withinBounds(p, State{Rational(3)}));
  EXPECT_EQ(describeCondition(p, p.goal[0]), "c0 = 2");
}

}  // namespace
}  // namespace petriplan
