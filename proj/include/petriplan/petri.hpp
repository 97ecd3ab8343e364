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

// Petri net view of a grounded problem: one place per state variable, one
// transition per action.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "petriplan/problem.hpp"

namespace petriplan {

enum class ArcKind : std::uint8_t {
  PreOnly,    // tested, never changed
  EffOnly,    // written without being tested (Boolean) or numeric delta
  PreAndEff,  // Boolean flip, tested then negated
};

struct Arc {
  VarId place = 0;
  ActionId transition = 0;
  ArcKind kind = ArcKind::PreOnly;
  /// PreOnly: required value. EffOnly (Boolean): assigned value.
  /// PreAndEff: value after the flip.
  bool polarity = true;
  /// +1/-1 for Boolean arcs, the delta for numeric effects, the
  /// coefficient for numeric preconditions.
  Rational weight;
  /// Numeric PreOnly arcs: index into the action's precondition list.
  std::optional<std::size_t> preIndex;
};

struct IncidenceEntry {
  VarId place = 0;
  ActionId transition = 0;
  Rational value;

  bool operator==(const IncidenceEntry& o) const {
    return place == o.place && transition == o.transition && value == o.value;
  }
};

/// Column-major sparse matrix; entries sorted by (transition, place).
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<IncidenceEntry> entries;

  Rational at(VarId place, ActionId transition) const;
};

struct PetriNet {
  std::vector<StateVariable> places;
  std::vector<std::string> transitions;
  std::vector<Arc> arcs;
  SparseMatrix incidence;
  std::vector<bool> rebindToTrue;
  std::vector<bool> rebindToFalse;
  /// Booleans are [0,1]; numerics carry explicit and inferred bounds.
  std::vector<Interval> bounds;
  State initMarking;
  std::vector<Condition> goalMarking;
  /// Preconditions and effects per transition, as in the problem.
  std::vector<std::vector<Condition>> pre;
  std::vector<std::vector<Effect>> eff;

  std::size_t placeCount() const { return places.size(); }
  std::size_t transitionCount() const { return transitions.size(); }
  bool isBoolean(VarId v) const { return places[v].kind == VarKind::Boolean; }
};

/// Arcs and incidence; bounds hold only what is declared.
PetriNet buildPetri(const Problem& p);

/// Tightens numeric bounds from monotonicity and guarded updates.
PetriNet inferBounds(PetriNet net, const Problem& p);

/// Both steps, the form every pipeline consumes.
inline PetriNet buildNet(const Problem& p) {
  return inferBounds(buildPetri(p), p);
}

const SparseMatrix& incidenceMatrix(const PetriNet& net);

/// Bound on variable v implied by a single-variable relation, if any.
Interval impliedInterval(const LinearRelation& rel, VarId v);

}  // namespace petriplan
