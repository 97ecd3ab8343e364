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

// Per-step over-approximations of the states a plan can visit, from the
// initial state forwards and from the goal backwards. Any state that
// violates the sets at step k cannot occur at step k.

#pragma once

#include <vector>

#include "petriplan/expr.hpp"
#include "petriplan/petri.hpp"
#include "petriplan/problem.hpp"

namespace petriplan {

enum class Direction { Forward, Backward };

struct StepSets {
  /// Definite values, keyed by place id. Booleans are 0/1.
  BindingSet bindings;
  /// Per place; Booleans carry [0,1] or a point.
  std::vector<Interval> intervals;
  /// Forward: transitions that cannot fire from this step.
  /// Backward: transitions that cannot fire into this distance.
  std::vector<bool> disabled;

  bool operator==(const StepSets& o) const {
    return bindings == o.bindings && intervals == o.intervals &&
           disabled == o.disabled;
  }
};

struct ReachableSets {
  Direction direction = Direction::Forward;
  /// Index = step (forward) or distance from the goal (backward).
  std::vector<StepSets> perStep;
  int fixpointStep = 0;
  /// The step cap was hit; the last entry is then the trivial set.
  bool capped = false;

  const StepSets& at(int k) const {
    return perStep[static_cast<std::size_t>(
        std::min<int>(k, static_cast<int>(perStep.size()) - 1))];
  }
};

constexpr int kDefaultReachSteps = 64;

ReachableSets propagateForward(const Problem& p, const PetriNet& net,
                               int maxSteps = kDefaultReachSteps);
ReachableSets propagateBackward(const Problem& p, const PetriNet& net,
                                const std::vector<Condition>& goal,
                                int maxSteps = kDefaultReachSteps);
/// Backward starts from p.goal.
ReachableSets propagate(const Problem& p, const PetriNet& net, Direction dir,
                        int maxSteps = kDefaultReachSteps);

/// Bindings that hold at every step.
BindingSet constants(const ReachableSets& fwd);

/// max(first forward step consistent with the goal, first backward
/// distance consistent with the initial state); `cap` when either never is.
int horizonLowerBound(const ReachableSets& fwd, const ReachableSets& bwd,
                      const Problem& p, const PetriNet& net,
                      int cap = kDefaultReachSteps);

/// Whether the goal may hold in a state allowed by `sets` at step k.
bool goalConsistent(const StepSets& sets, const Problem& p,
                    const PetriNet& net, int k);

}  // namespace petriplan
