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

// Immutable constraint expressions over a table of typed variables,
// with partial evaluation, an incomplete propagation-based satisfiability
// check, negation normal form and SMT-LIB rendering.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "petriplan/rational.hpp"

namespace petriplan {

using ExprVar = std::uint32_t;

enum class Sort : std::uint8_t { Bool, Int, Real };

struct VarInfo {
  std::string name;
  Sort sort = Sort::Bool;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

class VarTable {
 public:
  /// Throws std::invalid_argument when the name is taken.
  ExprVar add(std::string name, Sort sort,
              std::optional<Rational> lower = std::nullopt,
              std::optional<Rational> upper = std::nullopt);
  std::optional<ExprVar> find(std::string_view name) const;
  const VarInfo& operator[](ExprVar v) const { return vars_[v]; }
  std::size_t size() const { return vars_.size(); }
  /// Declared box; Booleans are [0,1].
  Interval box(ExprVar v) const;
  bool isIntegral(ExprVar v) const { return vars_[v].sort != Sort::Real; }

 private:
  std::vector<VarInfo> vars_;
  std::unordered_map<std::string, ExprVar> byName_;
};

enum class ExprKind : std::uint8_t {
  Const,
  Var,
  Not,
  And,
  Or,
  Implies,
  LinRel,
  AtMost,
  Exactly,
};

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

class ExprNode {
 public:
  ExprKind kind() const { return kind_; }
  bool value() const { return value_; }
  ExprVar var() const { return var_; }
  const std::vector<Expr>& kids() const { return kids_; }
  /// LinRel: sorted by variable, nonzero coefficients.
  const std::vector<LinearTerm>& terms() const { return terms_; }
  RelOp op() const { return op_; }
  const Rational& rhs() const { return rhs_; }
  /// AtMost / Exactly over Boolean variables.
  const std::vector<ExprVar>& cardVars() const { return cardVars_; }
  std::int64_t bound() const { return bound_; }
  std::size_t hash() const { return hash_; }

  bool isLiteral() const {
    return kind_ == ExprKind::Var ||
           (kind_ == ExprKind::Not && kids_[0]->kind_ == ExprKind::Var);
  }
  bool isConst(bool v) const { return kind_ == ExprKind::Const && value_ == v; }

 private:
  friend struct ExprFactory;
  ExprKind kind_ = ExprKind::Const;
  bool value_ = false;
  ExprVar var_ = 0;
  std::vector<Expr> kids_;
  std::vector<LinearTerm> terms_;
  RelOp op_ = RelOp::Le;
  Rational rhs_;
  std::vector<ExprVar> cardVars_;
  std::int64_t bound_ = 0;
  std::size_t hash_ = 0;
};

bool structurallyEqual(const Expr& a, const Expr& b);

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e->hash(); }
};
struct ExprEqual {
  bool operator()(const Expr& a, const Expr& b) const {
    return structurallyEqual(a, b);
  }
};

// Smart constructors. They flatten And/Or, fold constants, and cancel
// double negation; results are always in simplified form.
Expr mkConst(bool value);
Expr mkTrue();
Expr mkFalse();
Expr mkVar(ExprVar v);
Expr mkLit(ExprVar v, bool polarity);
Expr mkNot(const Expr& e);
Expr mkAnd(std::vector<Expr> kids);
Expr mkOr(std::vector<Expr> kids);
Expr mkAnd(const Expr& a, const Expr& b);
Expr mkOr(const Expr& a, const Expr& b);
Expr mkImplies(const Expr& a, const Expr& b);
Expr mkLinRel(std::vector<LinearTerm> terms, RelOp op, const Rational& rhs);
Expr mkAtMost(std::vector<ExprVar> vars, std::int64_t k);
Expr mkExactly(std::vector<ExprVar> vars, std::int64_t k);

/// Values for Boolean variables are 0/1.
using BindingSet = std::map<ExprVar, Rational>;

/// Substitutes bindings and simplifies. Fully bound input yields a Const.
Expr pval(const Expr& e, const BindingSet& b);

/// Direct evaluation under a total assignment indexed by variable.
bool evaluate(const Expr& e, const std::vector<Rational>& assignment);

enum class PsatResult { Sat, Unsat, Unknown };

std::string_view psatName(PsatResult r);

/// Sound and incomplete: unit propagation over literals and interval boxes
/// plus pure-literal elimination, run to a fixpoint without search.
/// `boxes`, when given, narrows the declared boxes (indexed by variable).
PsatResult psat(const Expr& e, const VarTable& vars,
                const std::vector<Interval>* boxes = nullptr);

/// Negation pushed to Boolean variables. Negated relations become their
/// complement: exact over integer-valued sums, the closure otherwise.
Expr nnf(const Expr& e, const VarTable& vars);

/// Every variable mentioned, ascending.
std::vector<ExprVar> exprVars(const Expr& e);

/// Infix rendering for diagnostics.
std::string toString(const Expr& e, const VarTable& vars);

/// SMT-LIB 2 term. Relations are scaled to integer coefficients.
std::string toSmtLib(const Expr& e, const VarTable& vars);
std::string smtSymbol(std::string_view name);

/// Multiplies a relation by the positive factor that makes every
/// coefficient and the right-hand side integral.
void scaleToIntegers(std::vector<LinearTerm>& terms, Rational& rhs);

}  // namespace petriplan
