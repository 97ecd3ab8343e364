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

// Parametric benchmark families and explicit-state ground truth.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "petriplan/problem.hpp"

namespace petriplan {

/// n integer counters c_i in [0, maxVal], all starting at 0, with inc_i and
/// dec_i actions; goal c_i = goalVals[i]. Throws std::invalid_argument on a
/// length mismatch.
Problem genCounters(int n, int maxVal, const std::vector<int>& goalVals);

/// Trucks drive between locations and carry packages up to `capacity`.
/// Trucks start at the last location; package p starts at p % locations and
/// must end at (p + 1) % locations.
Problem genDelivery(int trucks, int packages, int locations, int capacity);

/// Boolean-only problem, deterministic in `seed`.
Problem genRandomStrips(std::uint64_t seed, int nVars, int nActions);

/// A robot moving between n locations; at_i is one-hot, visited_i latches.
Problem genRobot(int n);

struct OracleResult {
  enum class Status { Reachable, Unreachable, LimitExceeded };
  Status status = Status::Unreachable;
  std::vector<std::string> plan;
  int steps = 0;
  std::size_t statesExplored = 0;
};

/// Breadth-first search under serial semantics. Successors that leave the
/// declared bounds or violate the problem's global constraints are pruned.
OracleResult oracleReachable(const Problem& p, std::size_t maxStates);

enum class PairStatus { BothTrueReachable, Never, Limit };

PairStatus oraclePairReachable(const Problem& p, VarId u, VarId v,
                               std::size_t maxStates);

/// layers[k] = every state reachable by exactly k serial actions, for
/// k = 0..maxSteps. nullopt when more than maxStates distinct states show up.
std::optional<std::vector<std::vector<State>>> serialLayers(
    const Problem& p, int maxSteps, std::size_t maxStates);

/// All reachable states (BFS order), or nullopt past maxStates.
std::optional<std::vector<State>> reachableStates(const Problem& p,
                                                  std::size_t maxStates);

/// Applies an action if its preconditions hold; the result may leave the
/// declared bounds.
std::optional<State> applyAction(const Problem& p, ActionId a,
                                 const State& s);

struct StateHash {
  std::size_t operator()(const State& s) const;
};

}  // namespace petriplan
