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

// Grounded planning problems: state variables, actions, initial state,
// goal conditions and global state constraints, plus the canonical JSON
// document format (see docs/problem-format.md).

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "petriplan/rational.hpp"

namespace petriplan {

using VarId = std::uint32_t;
using ActionId = std::uint32_t;

enum class VarKind : std::uint8_t { Boolean, Integer, Real };

std::string_view varKindName(VarKind kind);

struct StateVariable {
  VarId id = 0;
  std::string name;
  VarKind kind = VarKind::Boolean;
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  bool operator==(const StateVariable&) const = default;
};

struct BoolLiteral {
  VarId var = 0;
  bool polarity = true;

  bool operator==(const BoolLiteral&) const = default;
};

/// sum(coeff * var) op rhs over numeric variables.
struct LinearRelation {
  std::vector<LinearTerm> terms;
  RelOp op = RelOp::Le;
  Rational rhs;

  bool operator==(const LinearRelation& other) const {
    return terms == other.terms && op == other.op && rhs == other.rhs;
  }
};

using Condition = std::variant<BoolLiteral, LinearRelation>;

struct BoolAssign {
  VarId var = 0;
  bool value = true;

  bool operator==(const BoolAssign&) const = default;
};

struct NumDelta {
  VarId var = 0;
  Rational delta;

  bool operator==(const NumDelta& other) const {
    return var == other.var && delta == other.delta;
  }
};

using Effect = std::variant<BoolAssign, NumDelta>;

VarId effectVar(const Effect& effect);

struct Action {
  std::string name;
  std::vector<Condition> pre;
  std::vector<Effect> eff;

  bool operator==(const Action& other) const {
    return name == other.name && pre == other.pre && eff == other.eff;
  }
};

/// A full assignment, indexed by VarId. Booleans are stored as 0/1.
using State = std::vector<Rational>;

struct Problem {
  std::vector<StateVariable> vars;
  std::vector<Action> actions;
  State init;
  /// Flat conjunction; explanations cite positions in this list.
  std::vector<Condition> goal;
  /// Global state constraints that must hold at every step after the
  /// initial state.
  std::vector<Condition> constraints;

  bool operator==(const Problem& other) const {
    return vars == other.vars && actions == other.actions &&
           init == other.init && goal == other.goal &&
           constraints == other.constraints;
  }

  std::optional<VarId> findVar(std::string_view name) const;
  std::optional<ActionId> findAction(std::string_view name) const;
  bool isBoolean(VarId v) const { return vars[v].kind == VarKind::Boolean; }
};

bool holds(const Condition& cond, const State& state);
bool holdsAll(const std::vector<Condition>& conds, const State& state);
/// Declared bounds (Booleans are always [0,1]).
bool withinBounds(const Problem& p, const State& state);
std::vector<VarId> conditionVars(const Condition& cond);

/// Human readable form, e.g. "at_A", "!p", "2*c + d <= 3".
std::string describeCondition(const Problem& p, const Condition& cond);

struct Diagnostic {
  std::string path;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Parses and validates a canonical problem document.
Problem parseProblem(std::string_view text);
/// Deterministic canonical text; parseProblem(serializeProblem(p)) == p.
std::string serializeProblem(const Problem& p);
/// Empty iff every structural invariant holds.
std::vector<Diagnostic> validateProblem(const Problem& p);

}  // namespace petriplan
