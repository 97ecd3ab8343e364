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

#include <algorithm>
#include <random>
#include <set>

#include "petriplan/domains.hpp"
#include "petriplan/relax.hpp"

namespace petriplan {
namespace {

using Sets = std::vector<std::vector<std::size_t>>;

VarId addBool(Problem& p, const std::string& name, bool init) {
  const auto id = static_cast<VarId>(p.vars.size());
  p.vars.push_back({id, name, VarKind::Boolean, {}, {}});
  p.init.push_back(Rational(init ? 1 : 0));
  return id;
}

// One token shuttling between p and q.
Problem shuttle() {
  Problem p;
  const VarId a = addBool(p, "p", true);
  const VarId b = addBool(p, "q", false);
  p.actions.push_back({"pq", {BoolLiteral{a, true}}, {BoolAssign{a, false}, BoolAssign{b, true}}});
  p.actions.push_back({"qp", {BoolLiteral{b, true}}, {BoolAssign{b, false}, BoolAssign{a, true}}});
  p.goal = {BoolLiteral{a, true}, BoolLiteral{b, true}};
  return p;
}

Condition eq(VarId v, int k) {
  return LinearRelation{{{v, Rational(1)}}, RelOp::Eq, Rational(k)};
}

RelaxedSystem relax(const Problem& p) { return buildRelaxedSystem(buildNet(p), p.constraints); }

TEST(RelaxTest, SystemShape) {
  const Problem p = genCounters(2, 3, {1, 1});
  const RelaxedSystem sys = relax(p);
  EXPECT_EQ(sys.placeVar.size(), 2u);
  EXPECT_EQ(sys.firingVar.size(), 4u);
  EXPECT_EQ(sys.placeRow.size(), 2u);
  EXPECT_EQ(sys.initMarking, p.init);
  for (auto f : sys.firingVar) EXPECT_EQ(sys.lp.vars[f].lower, Rational(0));
}

TEST(RelaxTest, CountersVerdicts) {
  EXPECT_EQ(checkGoalReachable(relax(genCounters(1, 2, {2})), genCounters(1, 2, {2}).goal),
            GoalStatus::PossiblyFeasible);
  const Problem bad = genCounters(1, 2, {3});
  EXPECT_EQ(checkGoalReachable(relax(bad), bad.goal), GoalStatus::Infeasible);
}

TEST(RelaxTest, ConstraintsTightenTheRelaxation) {
  Problem p = genCounters(1, 3, {2});
  EXPECT_EQ(checkGoalReachable(relax(p), p.goal), GoalStatus::PossiblyFeasible);
  p.constraints.push_back(LinearRelation{{{0, Rational(1)}}, RelOp::Le, Rational(1)});
  EXPECT_EQ(checkGoalReachable(relax(p), p.goal), GoalStatus::Infeasible);
}

TEST(RelaxTest, ConservedTokenMakesJointGoalInfeasible) {
  const Problem p = shuttle();
  const RelaxedSystem sys = relax(p);
  EXPECT_TRUE(relaxedFeasible(sys, p.goal, {0}));
  EXPECT_TRUE(relaxedFeasible(sys, p.goal, {1}));
  EXPECT_FALSE(relaxedFeasible(sys, p.goal, {0, 1}));
  EXPECT_EQ(explainInfeasibility(sys, p.goal).goalIndexSets, (Sets{{0, 1}}));
}

TEST(RelaxTest, SubsetHoldingInitiallyIsFeasible) {
  const Problem p = shuttle();
  EXPECT_TRUE(relaxedFeasible(relax(p), p.goal, {}));
  EXPECT_TRUE(relaxedFeasible(relax(p), p.goal, {0}));
}

TEST(ExplainTest, SingleCulprit) {
  const Problem p = genCounters(2, 2, {1, 3});
  const Explanation e = explainInfeasibility(relax(p), p.goal);
  EXPECT_EQ(e.goalIndexSets, (Sets{{1}}));
  EXPECT_EQ(e.method, Explanation::Method::Enumeration);
  EXPECT_FALSE(e.capped);
}

TEST(ExplainTest, DisjointCulprits) {
  Problem p = shuttle();
  const VarId c = static_cast<VarId>(p.vars.size());
  p.vars.push_back({c, "c", VarKind::Integer, Rational(0), Rational(2)});
  p.init.push_back(Rational(0));
  p.actions.push_back({"inc", {LinearRelation{{{c, Rational(1)}}, RelOp::Le, Rational(1)}},
                       {NumDelta{c, Rational(1)}}});
  p.goal.push_back(eq(c, 5));
  const RelaxedSystem sys = relax(p);
  EXPECT_EQ(explainInfeasibility(sys, p.goal).goalIndexSets, (Sets{{0, 1}, {2}}));
  ExplainOptions mip;
  mip.forceMip = true;
  const Explanation e = explainInfeasibility(sys, p.goal, mip);
  EXPECT_EQ(e.method, Explanation::Method::Mip);
  EXPECT_EQ(e.goalIndexSets, (Sets{{0, 1}, {2}}));
}

TEST(ExplainTest, OneHotPairsAreAllMinimal) {
  Problem p = genRobot(4);
  p.goal.clear();
  for (const char* n : {"at1", "at2", "at3"}) p.goal.push_back(BoolLiteral{*p.findVar(n), true});
  const RelaxedSystem sys = relax(p);
  const Sets want = {{0, 1}, {0, 2}, {1, 2}};
  EXPECT_EQ(explainInfeasibility(sys, p.goal).goalIndexSets, want);
  ExplainOptions mip;
  mip.forceMip = true;
  EXPECT_EQ(explainInfeasibility(sys, p.goal, mip).goalIndexSets, want);
}

TEST(ExplainTest, FeasibleGoalThrows) {
  const Problem p = genCounters(1, 2, {2});
  EXPECT_THROW(explainInfeasibility(relax(p), p.goal), std::logic_error);
}

TEST(ExplainTest, CapIsReported) {
  Problem p = genRobot(5);
  p.goal.clear();
  for (int i = 1; i < 5; ++i) {
    p.goal.push_back(BoolLiteral{*p.findVar("at" + std::to_string(i)), true});
  }
  ExplainOptions opts;
  opts.forceMip = true;
  opts.mipCap = 2;
  const Explanation e = explainInfeasibility(relax(p), p.goal, opts);
  EXPECT_TRUE(e.capped);
  EXPECT_LE(e.goalIndexSets.size(), 2u);
  EXPECT_FALSE(e.goalIndexSets.empty());
}

// Each reported set is infeasible and every one-smaller subset is feasible.
TEST(ExplainPropertyTest, SetsAreMinimal) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    Problem p = genRandomStrips(seed, 6, 6);
    p.goal.clear();
    for (VarId v = 0; v < p.vars.size(); ++v) {
      if (rng() % 2) p.goal.push_back(BoolLiteral{v, rng() % 2 == 0});
    }
    const RelaxedSystem sys = relax(p);
    if (checkGoalReachable(sys, p.goal) != GoalStatus::Infeasible) continue;
    ++checked;
    for (const bool forceMip : {false, true}) {
      ExplainOptions opts;
      opts.forceMip = forceMip;
      const Explanation e = explainInfeasibility(sys, p.goal, opts);
      ASSERT_FALSE(e.goalIndexSets.empty());
      for (const auto& s : e.goalIndexSets) {
        EXPECT_FALSE(relaxedFeasible(sys, p.goal, s));
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
          auto smaller = s;
          smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
          EXPECT_TRUE(relaxedFeasible(sys, p.goal, smaller));
        }
      }
    }
  }
  EXPECT_GT(checked, 5);
}

// ---------------------------------------------------------------------------
// Invariants

TEST(MutexTest, RobotLocationsArePairwiseExclusive) {
  const Problem p = genRobot(4);
  const PetriNet net = buildNet(p);
  const auto pairs = findMutexPairs(buildRelaxedSystem(net), net, 1);
  std::set<MutexPair> got(pairs.begin(), pairs.end());
  for (VarId i = 0; i < 4; ++i) {
    for (VarId j = i + 1; j < 4; ++j) EXPECT_TRUE(got.count({i, j})) << i << "," << j;
  }
  for (const auto& [u, v] : pairs) {
    EXPECT_EQ(oraclePairReachable(p, u, v, 100000), PairStatus::Never);
  }
}

TEST(MutexTest, ThreadCountDoesNotChangeResult) {
  const Problem p = genDelivery(2, 2, 3, 1);
  const PetriNet net = buildNet(p);
  const RelaxedSystem sys = buildRelaxedSystem(net);
  EXPECT_EQ(findMutexPairs(sys, net, 1), findMutexPairs(sys, net, 4));
}

TEST(MutexTest, PairsAreSoundOnRandomStrips) {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const Problem p = genRandomStrips(seed, 7, 8);
    const PetriNet net = buildNet(p);
    for (const auto& [u, v] : findMutexPairs(buildRelaxedSystem(net), net, 1)) {
      EXPECT_EQ(oraclePairReachable(p, u, v, 100000), PairStatus::Never)
          << "seed " << seed << " pair " << u << "," << v;
    }
  }
}

TEST(CliqueTest, Triangle) {
  EXPECT_EQ(greedyCliqueCover({{0, 1}, {1, 2}, {0, 2}}),
            (std::vector<std::vector<std::uint32_t>>{{0, 1, 2}}));
}

TEST(CliqueTest, PathNeedsTwoCliques) {
  const auto cover = greedyCliqueCover({{0, 1}, {1, 2}});
  EXPECT_EQ(cover, (std::vector<std::vector<std::uint32_t>>{{0, 1}, {1, 2}}));
}

TEST(CliqueTest, EveryEdgeIsCovered) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 30; ++round) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < 8; ++u) {
      for (std::uint32_t v = u + 1; v < 8; ++v) {
        if (rng() % 3 == 0) edges.emplace_back(u, v);
      }
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> edgeSet(edges.begin(), edges.end());
    const auto cover = greedyCliqueCover(edges);
    std::set<std::pair<std::uint32_t, std::uint32_t>> covered;
    for (const auto& c : cover) {
      EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
      for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          EXPECT_TRUE(edgeSet.count({c[i], c[j]})) << "not a clique";
          covered.insert({c[i], c[j]});
        }
      }
    }
    EXPECT_EQ(covered, edgeSet);
  }
}

TEST(OneHotTest, RobotLocationsFormExactlyOne) {
  for (int n : {3, 5}) {
    const Problem p = genRobot(n);
    const PetriNet net = buildNet(p);
    const auto groups = synthesizeInvariants(buildRelaxedSystem(net), net, 1);
    std::vector<VarId> at;
    for (int i = 0; i < n; ++i) at.push_back(static_cast<VarId>(i));
    const MutexGroup want{at, MutexGroup::Kind::ExactlyOne};
    EXPECT_NE(std::find(groups.begin(), groups.end(), want), groups.end());
  }
}

TEST(OneHotTest, GroupWithoutConservationStaysAtMostOne) {
  // The shuttle conserves one token, but only if it starts with one.
  Problem p = shuttle();
  const PetriNet net = buildNet(p);
  const MutexGroup g{{0, 1}, MutexGroup::Kind::AtMostOne};
  EXPECT_EQ(detectOneHot(g, net, p.init).kind, MutexGroup::Kind::ExactlyOne);
  p.init[0] = 0;
  EXPECT_EQ(detectOneHot(g, buildNet(p), p.init).kind, MutexGroup::Kind::AtMostOne);
}

}  // namespace
}  // namespace petriplan
