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

// Bounded-horizon encoding of a net, and the translation of formulas into
// clauses, linear rows and indicator rows.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "petriplan/expr.hpp"
#include "petriplan/lp.hpp"
#include "petriplan/petri.hpp"
#include "petriplan/reach.hpp"
#include "petriplan/relax.hpp"

namespace petriplan {

class SolverState;

// ---------------------------------------------------------------------------
// Clause / indicator translation

struct Lit {
  ExprVar var = 0;
  bool positive = true;

  bool operator==(const Lit&) const = default;
};

using Clause = std::vector<Lit>;

/// guard ⟹ row, where guard is a Boolean literal.
struct Indicator {
  Lit guard;
  LpRow row;
};

struct PgResult {
  std::vector<Clause> clauses;
  std::vector<Indicator> indicators;
  /// Linear rows that hold unconditionally (cardinalities included).
  std::vector<LpRow> rows;
  std::vector<ExprVar> auxVars;
};

/// Polarity-aware clause form of `e`. Fresh Boolean variables are added to
/// `vars` through `freshName`, which must return unused names.
PgResult pgTransform(const Expr& e, VarTable& vars,
                     const std::function<std::string()>& freshName);

enum class TranslationMode { Indicator, BigM };

constexpr int kBigMScale = 2;

enum class MilpVarKind { Continuous, Integer, Binary };

struct MilpVar {
  std::string name;
  MilpVarKind kind = MilpVarKind::Continuous;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

struct IndicatorRow {
  /// Always a Binary variable.
  ExprVar guard = 0;
  /// Value of the guard that activates the row.
  bool activeWhen = true;
  LpRow row;
};

struct MilpConstraintSet {
  std::vector<MilpVar> vars;
  std::vector<LpRow> rows;
  std::vector<IndicatorRow> indicators;
  std::optional<LpObjective> objective;

  /// Plain program; requires no remaining indicator rows.
  LinProgram toLinProgram() const;
};

class UnboundedIndicatorError : public std::runtime_error {
 public:
  UnboundedIndicatorError(const std::string& var)
      : std::runtime_error("big-M needs a finite bound on variable '" + var +
                           "'"),
        var_(var) {}
  const std::string& variable() const { return var_; }

 private:
  std::string var_;
};

/// Variables are mirrored from `vars`; Big-M uses their boxes.
MilpConstraintSet toMilp(const PgResult& pg, const VarTable& vars,
                         TranslationMode mode);
/// Appends the translation of `pg` to an existing set.
void appendMilp(MilpConstraintSet& out, const PgResult& pg,
                const VarTable& vars, TranslationMode mode);

/// The M of guard ⟹ row: kBigMScale * (max activity - rhs), at least 0.
/// For Eq rows this is the larger side. Throws UnboundedIndicatorError.
Rational bigM(const LpRow& row, const VarTable& vars);

// ---------------------------------------------------------------------------
// Transition conflicts

/// t's effect can falsify one of u's preconditions (explicit or the implied
/// bound preconditions of u's numeric effects), or vice versa.
std::vector<std::pair<ActionId, ActionId>> transitionConflicts(
    const PetriNet& net);

/// Preconditions keeping every numeric effect of t inside the place bounds.
std::vector<LinearRelation> boundPreconditions(const PetriNet& net,
                                               ActionId t);

// ---------------------------------------------------------------------------
// Step encoding

/// Value of a place at a step: a variable, or a constant substituted from
/// forward reachability.
struct PlaceValue {
  std::optional<ExprVar> var;
  Rational constant;

  bool isConst() const { return !var.has_value(); }
};

struct StepEncoding {
  int step = 0;
  std::vector<PlaceValue> placeVars;
  /// Firing variables of the transition layer that leads into this step;
  /// nullopt for transitions disabled by forward reachability.
  std::vector<std::optional<ExprVar>> transVars;
  std::vector<Expr> assertions;
};

/// Grows a horizon encoding step by step inside a SolverState.
class HorizonEncoder {
 public:
  HorizonEncoder(const PetriNet& net, const std::vector<Condition>& constraints,
                 std::vector<MutexGroup> invariants, ReachableSets forward);

  /// Step 0 (the initial marking, all constants). Declares nothing.
  const StepEncoding& encodeInitial();
  /// Declares step k = steps() and asserts its link from k-1.
  const StepEncoding& encodeStep(SolverState& st);
  /// Steps encoded so far, counting step 0.
  int steps() const { return static_cast<int>(steps_.size()); }
  const StepEncoding& step(int k) const { return steps_[k]; }

  /// Condition at step k, constants folded.
  Expr conditionAt(const Condition& c, int k) const;
  Expr placeEquals(VarId place, const Rational& value, int k) const;
  Expr placeWithin(VarId place, const Interval& iv, int k) const;
  /// Firing literal of transition t between k and k+1.
  Expr fires(ActionId t, int k) const;

  /// Adds global constraints for all present and future steps >= 1.
  void addConstraints(SolverState& st, const std::vector<Condition>& extra);
  /// Replaces invariants for future steps and asserts the new groups on
  /// existing ones.
  void addInvariants(SolverState& st, const std::vector<MutexGroup>& groups);
  /// Forward sets only shrink; new constants become assertions on existing
  /// steps.
  void refineForward(SolverState& st, ReachableSets forward);

  const std::vector<std::vector<ActionId>>& conflictGroups() const {
    return conflictGroups_;
  }
  const PetriNet& net() const { return net_; }

 private:
  std::vector<LinearTerm> linearAt(const std::vector<LinearTerm>& terms, int k,
                                   Rational& constant) const;
  Expr groupAt(const MutexGroup& g, int k) const;
  Expr numericFlow(VarId place, int k) const;
  Expr booleanFlow(VarId place, int k) const;
  void push(SolverState& st, StepEncoding& enc, Expr e);

  PetriNet net_;
  std::vector<Condition> constraints_;
  std::vector<MutexGroup> invariants_;
  ReachableSets forward_;
  std::vector<std::vector<ActionId>> conflictGroups_;
  std::vector<std::vector<LinearRelation>> boundPre_;
  std::vector<StepEncoding> steps_;
};

}  // namespace petriplan
