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

// Order-free relaxation of the net: all firings are summed into one count
// per transition, Booleans become reals in [0,1], and slack absorbs the
// token overflow of writes that may hit an already-set place. Infeasibility
// of the resulting LP is a proof that no plan of any length exists.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "petriplan/lp.hpp"
#include "petriplan/petri.hpp"

namespace petriplan {

struct RelaxedSystem {
  /// Template: place rows and boxes, no goal.
  LinProgram lp;
  std::vector<std::uint32_t> placeVar;
  std::vector<std::uint32_t> firingVar;
  std::vector<std::uint32_t> slackPlus;
  std::vector<std::uint32_t> slackMinus;
  /// Row index of each place's flow equation in lp.rows.
  std::vector<std::size_t> placeRow;
  /// Global constraints asserted over the final marking.
  std::vector<Condition> constraints;
  State initMarking;
  std::vector<bool> boolPlace;
};

RelaxedSystem buildRelaxedSystem(const PetriNet& net,
                                 const std::vector<Condition>& constraints = {});

/// Adds `cond` over the final-marking variables of `sys`.
void assertOnFinalMarking(LinProgram& lp, const RelaxedSystem& sys,
                          const Condition& cond);

/// Relaxed feasibility of a goal subset. A subset that already holds in
/// the initial marking counts as feasible (the empty plan).
bool relaxedFeasible(const RelaxedSystem& sys, const std::vector<Condition>& goal,
                     const std::vector<std::size_t>& subset);

enum class GoalStatus { PossiblyFeasible, Infeasible };

GoalStatus checkGoalReachable(const RelaxedSystem& sys,
                              const std::vector<Condition>& goal);

using MutexPair = std::pair<VarId, VarId>;

/// Boolean place pairs that can never both be true. `threads` = 0 picks
/// the hardware concurrency.
std::vector<MutexPair> findMutexPairs(const RelaxedSystem& sys,
                                      const PetriNet& net,
                                      unsigned threads = 0);

struct MutexGroup {
  enum class Kind { AtMostOne, ExactlyOne };
  std::vector<VarId> members;
  Kind kind = Kind::AtMostOne;

  bool operator==(const MutexGroup&) const = default;
};

/// Greedy clique cover of an undirected graph given by its edges. Every
/// edge lands in some returned clique; cliques come back sorted.
std::vector<std::vector<std::uint32_t>> greedyCliqueCover(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

std::vector<MutexGroup> buildMutexGroups(const std::vector<MutexPair>& pairs);

MutexGroup detectOneHot(const MutexGroup& group, const PetriNet& net,
                        const State& init);

/// Pairs, groups and one-hot upgrades in one call.
std::vector<MutexGroup> synthesizeInvariants(const RelaxedSystem& sys,
                                             const PetriNet& net,
                                             unsigned threads = 0);

struct Explanation {
  enum class Method { Enumeration, Mip };
  /// Minimal infeasible goal subsets, each sorted, the list sorted.
  std::vector<std::vector<std::size_t>> goalIndexSets;
  Method method = Method::Enumeration;
  /// The alternative-solution loop hit its cap.
  bool capped = false;
};

struct ExplainOptions {
  std::size_t enumerationThreshold = 12;
  std::size_t mipCap = 64;
  bool forceMip = false;
};

/// Throws std::logic_error if the goal is relaxed-feasible.
Explanation explainInfeasibility(const RelaxedSystem& sys,
                                 const std::vector<Condition>& goal,
                                 const ExplainOptions& opts = {});

}  // namespace petriplan
