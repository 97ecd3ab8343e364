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

#include "petriplan/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

namespace petriplan {

ExprVar VarTable::add(std::string name, Sort sort,
                      std::optional<Rational> lower,
                      std::optional<Rational> upper) {
  if (byName_.count(name)) {
    throw std::invalid_argument("variable '" + name + "' already declared");
  }
  const auto id = static_cast<ExprVar>(vars_.size());
  byName_.emplace(name, id);
  vars_.push_back({std::move(name), sort, std::move(lower), std::move(upper)});
  return id;
}

std::optional<ExprVar> VarTable::find(std::string_view name) const {
  auto it = byName_.find(std::string(name));
  if (it == byName_.end()) return std::nullopt;
  return it->second;
}

Interval VarTable::box(ExprVar v) const {
  const VarInfo& info = vars_[v];
  if (info.sort == Sort::Bool) return {Rational(0), Rational(1)};
  return {info.lower, info.upper};
}

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

struct ExprFactory {
  static std::shared_ptr<ExprNode> make(ExprKind kind) {
    auto n = std::make_shared<ExprNode>();
    n->kind_ = kind;
    return n;
  }

  static Expr seal(std::shared_ptr<ExprNode> n) {
    std::size_t h = static_cast<std::size_t>(n->kind_) * 0x100000001b3ull;
    h = mix(h, n->value_);
    h = mix(h, n->var_);
    for (const auto& k : n->kids_) h = mix(h, k->hash_);
    for (const auto& t : n->terms_) h = mix(mix(h, t.var), hashRational(t.coeff));
    h = mix(h, static_cast<std::size_t>(n->op_));
    h = mix(h, hashRational(n->rhs_));
    for (auto v : n->cardVars_) h = mix(h, v);
    h = mix(h, static_cast<std::size_t>(n->bound_));
    n->hash_ = h;
    return n;
  }

  static Expr constant(bool v) {
    auto n = make(ExprKind::Const);
    n->value_ = v;
    return seal(std::move(n));
  }

  static Expr var(ExprVar v) {
    auto n = make(ExprKind::Var);
    n->var_ = v;
    return seal(std::move(n));
  }

  static Expr nary(ExprKind kind, std::vector<Expr> kids) {
    auto n = make(kind);
    n->kids_ = std::move(kids);
    return seal(std::move(n));
  }

  static Expr rel(std::vector<LinearTerm> terms, RelOp op, Rational rhs) {
    auto n = make(ExprKind::LinRel);
    n->terms_ = std::move(terms);
    n->op_ = op;
    n->rhs_ = std::move(rhs);
    return seal(std::move(n));
  }

  static Expr card(ExprKind kind, std::vector<ExprVar> vars, std::int64_t k) {
    auto n = make(kind);
    n->cardVars_ = std::move(vars);
    n->bound_ = k;
    return seal(std::move(n));
  }
};

bool structurallyEqual(const Expr& a, const Expr& b) {
  if (a == b) return true;
  if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
  if (a->value() != b->value() || a->var() != b->var() || a->op() != b->op() ||
      a->bound() != b->bound() || a->rhs() != b->rhs() ||
      a->terms() != b->terms() || a->cardVars() != b->cardVars() ||
      a->kids().size() != b->kids().size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->kids().size(); ++i) {
    if (!structurallyEqual(a->kids()[i], b->kids()[i])) return false;
  }
  return true;
}

Expr mkConst(bool value) {
  static const Expr t = ExprFactory::constant(true);
  static const Expr f = ExprFactory::constant(false);
  return value ? t : f;
}
Expr mkTrue() { return mkConst(true); }
Expr mkFalse() { return mkConst(false); }

Expr mkVar(ExprVar v) { return ExprFactory::var(v); }

Expr mkLit(ExprVar v, bool polarity) {
  return polarity ? mkVar(v) : mkNot(mkVar(v));
}

Expr mkNot(const Expr& e) {
  if (e->kind() == ExprKind::Const) return mkConst(!e->value());
  if (e->kind() == ExprKind::Not) return e->kids()[0];
  return ExprFactory::nary(ExprKind::Not, {e});
}

namespace {

bool complementary(const Expr& a, const Expr& b) {
  if (a->kind() == ExprKind::Not) return structurallyEqual(a->kids()[0], b);
  if (b->kind() == ExprKind::Not) return structurallyEqual(b->kids()[0], a);
  return false;
}

// Shared body of And/Or: `unit` is the identity, `!unit` the annihilator.
Expr mkJunction(ExprKind kind, std::vector<Expr> kids) {
  const bool unit = kind == ExprKind::And;
  std::vector<Expr> flat;
  flat.reserve(kids.size());
  std::function<bool(const Expr&)> push = [&](const Expr& k) {
    if (k->kind() == ExprKind::Const) return k->value() != unit;
    if (k->kind() == kind) {
      for (const auto& g : k->kids()) {
        if (push(g)) return true;
      }
      return false;
    }
    for (const auto& f : flat) {
      if (structurallyEqual(f, k)) return false;
      if (k->isLiteral() && f->isLiteral() && complementary(f, k)) return true;
    }
    flat.push_back(k);
    return false;
  };
  for (const auto& k : kids) {
    if (push(k)) return mkConst(!unit);
  }
  if (flat.empty()) return mkConst(unit);
  if (flat.size() == 1) return flat[0];
  return ExprFactory::nary(kind, std::move(flat));
}

}  // namespace

Expr mkAnd(std::vector<Expr> kids) {
  return mkJunction(ExprKind::And, std::move(kids));
}
Expr mkOr(std::vector<Expr> kids) {
  return mkJunction(ExprKind::Or, std::move(kids));
}
Expr mkAnd(const Expr& a, const Expr& b) { return mkAnd(std::vector{a, b}); }
Expr mkOr(const Expr& a, const Expr& b) { return mkOr(std::vector{a, b}); }

Expr mkImplies(const Expr& a, const Expr& b) {
  if (a->kind() == ExprKind::Const) return a->value() ? b : mkTrue();
  if (b->kind() == ExprKind::Const) return b->value() ? mkTrue() : mkNot(a);
  if (structurallyEqual(a, b)) return mkTrue();
  return ExprFactory::nary(ExprKind::Implies, {a, b});
}

Expr mkLinRel(std::vector<LinearTerm> terms, RelOp op, const Rational& rhs) {
  normalizeTerms(terms);
  if (terms.empty()) return mkConst(compare(Rational(0), op, rhs));
  return ExprFactory::rel(std::move(terms), op, rhs);
}

namespace {

Expr allLits(const std::vector<ExprVar>& vars, bool polarity) {
  std::vector<Expr> lits;
  for (auto v : vars) lits.push_back(mkLit(v, polarity));
  return mkAnd(std::move(lits));
}

}  // namespace

Expr mkAtMost(std::vector<ExprVar> vars, std::int64_t k) {
  std::sort(vars.begin(), vars.end());
  const auto n = static_cast<std::int64_t>(vars.size());
  if (k < 0) return mkFalse();
  if (k >= n) return mkTrue();
  if (k == 0) return allLits(vars, false);
  return ExprFactory::card(ExprKind::AtMost, std::move(vars), k);
}

Expr mkExactly(std::vector<ExprVar> vars, std::int64_t k) {
  std::sort(vars.begin(), vars.end());
  const auto n = static_cast<std::int64_t>(vars.size());
  if (k < 0 || k > n) return mkFalse();
  if (k == 0) return allLits(vars, false);
  if (k == n) return allLits(vars, true);
  return ExprFactory::card(ExprKind::Exactly, std::move(vars), k);
}

namespace {

// Rebuilds `e` with `leaf` applied to variables and atoms; structure
// is re-simplified through the smart constructors.
template <typename VarFn, typename RelFn, typename CardFn>
Expr rewrite(const Expr& e, VarFn&& onVar, RelFn&& onRel, CardFn&& onCard) {
  std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
    switch (x->kind()) {
      case ExprKind::Const:
        return x;
      case ExprKind::Var:
        return onVar(x);
      case ExprKind::Not:
        return mkNot(go(x->kids()[0]));
      case ExprKind::And:
      case ExprKind::Or: {
        const bool isAnd = x->kind() == ExprKind::And;
        std::vector<Expr> kids;
        kids.reserve(x->kids().size());
        for (const auto& k : x->kids()) {
          Expr r = go(k);
          if (r->isConst(!isAnd)) return r;
          kids.push_back(std::move(r));
        }
        return isAnd ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
      }
      case ExprKind::Implies:
        return mkImplies(go(x->kids()[0]), go(x->kids()[1]));
      case ExprKind::LinRel:
        return onRel(x);
      case ExprKind::AtMost:
      case ExprKind::Exactly:
        return onCard(x);
    }
    return x;
  };
  return go(e);
}

}  // namespace

Expr pval(const Expr& e, const BindingSet& b) {
  if (b.empty()) return e;
  return rewrite(
      e,
      [&](const Expr& x) {
        auto it = b.find(x->var());
        return it == b.end() ? x : mkConst(it->second != 0);
      },
      [&](const Expr& x) {
        Rational rhs = x->rhs();
        std::vector<LinearTerm> rest;
        bool touched = false;
        for (const auto& t : x->terms()) {
          auto it = b.find(t.var);
          if (it == b.end()) {
            rest.push_back(t);
          } else {
            rhs -= t.coeff * it->second;
            touched = true;
          }
        }
        return touched ? mkLinRel(std::move(rest), x->op(), rhs) : x;
      },
      [&](const Expr& x) {
        std::int64_t k = x->bound();
        std::vector<ExprVar> rest;
        for (auto v : x->cardVars()) {
          auto it = b.find(v);
          if (it == b.end()) {
            rest.push_back(v);
          } else if (it->second != 0) {
            --k;
          }
        }
        if (rest.size() == x->cardVars().size()) return x;
        return x->kind() == ExprKind::AtMost ? mkAtMost(std::move(rest), k)
                                             : mkExactly(std::move(rest), k);
      });
}

bool evaluate(const Expr& e, const std::vector<Rational>& a) {
  switch (e->kind()) {
    case ExprKind::Const:
      return e->value();
    case ExprKind::Var:
      return a[e->var()] != 0;
    case ExprKind::Not:
      return !evaluate(e->kids()[0], a);
    case ExprKind::And:
      return std::all_of(e->kids().begin(), e->kids().end(),
                         [&](const Expr& k) { return evaluate(k, a); });
    case ExprKind::Or:
      return std::any_of(e->kids().begin(), e->kids().end(),
                         [&](const Expr& k) { return evaluate(k, a); });
    case ExprKind::Implies:
      return !evaluate(e->kids()[0], a) || evaluate(e->kids()[1], a);
    case ExprKind::LinRel: {
      Rational lhs = 0;
      for (const auto& t : e->terms()) lhs += t.coeff * a[t.var];
      return compare(lhs, e->op(), e->rhs());
    }
    case ExprKind::AtMost:
    case ExprKind::Exactly: {
      std::int64_t count = 0;
      for (auto v : e->cardVars()) count += a[v] != 0 ? 1 : 0;
      return e->kind() == ExprKind::AtMost ? count <= e->bound()
                                           : count == e->bound();
    }
  }
  return false;
}

void scaleToIntegers(std::vector<LinearTerm>& terms, Rational& rhs) {
  mpz_class l = rhs.get_den();
  for (const auto& t : terms) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  if (l == 1) return;
  const Rational factor(l);
  for (auto& t : terms) t.coeff *= factor;
  rhs *= factor;
}

namespace {

std::vector<LinearTerm> cardTerms(const std::vector<ExprVar>& vars) {
  std::vector<LinearTerm> terms;
  for (auto v : vars) terms.push_back({v, Rational(1)});
  return terms;
}

// Complement of a relation; exact when the sum is integer-valued.
Expr complementRel(const std::vector<LinearTerm>& terms, RelOp op,
                   const Rational& rhs, const VarTable& vars) {
  const bool integral =
      std::all_of(terms.begin(), terms.end(),
                  [&](const LinearTerm& t) { return vars.isIntegral(t.var); });
  if (!integral) {
    switch (op) {
      case RelOp::Le:
        return mkLinRel(terms, RelOp::Ge, rhs);
      case RelOp::Ge:
        return mkLinRel(terms, RelOp::Le, rhs);
      case RelOp::Eq:
        return mkTrue();
    }
  }
  std::vector<LinearTerm> scaled = terms;
  Rational factor = 1;
  {
    mpz_class l = 1;
    for (const auto& t : scaled) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    factor = Rational(l);
  }
  for (auto& t : scaled) t.coeff *= factor;
  const Rational b = rhs * factor;
  switch (op) {
    case RelOp::Le:
      return mkLinRel(std::move(scaled), RelOp::Ge, floorOf(b) + 1);
    case RelOp::Ge:
      return mkLinRel(std::move(scaled), RelOp::Le, ceilOf(b) - 1);
    case RelOp::Eq:
      if (!isIntegral(b)) return mkTrue();
      return mkOr(mkLinRel(scaled, RelOp::Le, b - 1),
                  mkLinRel(scaled, RelOp::Ge, b + 1));
  }
  return mkTrue();
}

// Pushes negations down. With `complementAtoms`, negated relations and
// cardinalities are replaced by their complement; otherwise they stay as
// negated atoms.
Expr pushNegations(const Expr& e, bool negate, bool complementAtoms,
                   const VarTable& vars) {
  auto rec = [&](const Expr& x, bool n) {
    return pushNegations(x, n, complementAtoms, vars);
  };
  switch (e->kind()) {
    case ExprKind::Const:
      return mkConst(e->value() != negate);
    case ExprKind::Var:
      return negate ? mkNot(e) : e;
    case ExprKind::Not:
      return rec(e->kids()[0], !negate);
    case ExprKind::And:
    case ExprKind::Or: {
      std::vector<Expr> kids;
      for (const auto& k : e->kids()) kids.push_back(rec(k, negate));
      const bool asAnd = (e->kind() == ExprKind::And) != negate;
      return asAnd ? mkAnd(std::move(kids)) : mkOr(std::move(kids));
    }
    case ExprKind::Implies:
      if (negate) return mkAnd(rec(e->kids()[0], false), rec(e->kids()[1], true));
      return mkOr(rec(e->kids()[0], true), rec(e->kids()[1], false));
    case ExprKind::LinRel:
      if (!negate) return e;
      if (!complementAtoms) return mkNot(e);
      return complementRel(e->terms(), e->op(), e->rhs(), vars);
    case ExprKind::AtMost:
    case ExprKind::Exactly:
      if (!negate) return e;
      if (!complementAtoms) return mkNot(e);
      return complementRel(cardTerms(e->cardVars()),
                           e->kind() == ExprKind::AtMost ? RelOp::Le : RelOp::Eq,
                           Rational(e->bound()), vars);
  }
  return e;
}

}  // namespace

Expr nnf(const Expr& e, const VarTable& vars) {
  return pushNegations(e, false, true, vars);
}

std::string_view psatName(PsatResult r) {
  switch (r) {
    case PsatResult::Sat:
      return "SAT";
    case PsatResult::Unsat:
      return "UNSAT";
    case PsatResult::Unknown:
      return "UNKNOWN";
  }
  return "?";
}

namespace {

class Propagator {
 public:
  Propagator(const VarTable& vars, const std::vector<Interval>* boxes)
      : vars_(vars), box_(vars.size()) {
    for (ExprVar v = 0; v < vars.size(); ++v) {
      box_[v] = vars.box(v);
      if (boxes && v < boxes->size()) box_[v] = box_[v].intersect((*boxes)[v]);
      round(v);
    }
  }

  PsatResult run(const Expr& input) {
    for (auto v : exprVars(input)) {
      if (box_[v].empty()) return PsatResult::Unsat;
    }
    Expr cur = pushNegations(input, false, false, vars_);
    const std::size_t cap = 1000 + 4 * vars_.size();
    for (std::size_t iter = 0; iter < cap; ++iter) {
      cur = simplify(cur);
      if (cur->kind() == ExprKind::Const) {
        return cur->value() ? PsatResult::Sat : PsatResult::Unsat;
      }
      changed_ = false;
      const std::vector<Expr> units =
          cur->kind() == ExprKind::And ? cur->kids() : std::vector<Expr>{cur};
      for (const auto& u : units) {
        if (!unit(u)) return PsatResult::Unsat;
      }
      if (changed_) continue;
      pureLiterals(cur);
      if (!changed_) break;
    }
    return PsatResult::Unknown;
  }

 private:
  void round(ExprVar v) {
    if (!vars_.isIntegral(v)) return;
    Interval& b = box_[v];
    if (b.lo) b.lo = ceilOf(*b.lo);
    if (b.hi) b.hi = floorOf(*b.hi);
  }

  // Returns false when the box becomes empty.
  bool tighten(ExprVar v, const Interval& with) {
    Interval next = box_[v].intersect(with);
    if (vars_.isIntegral(v)) {
      if (next.lo) next.lo = ceilOf(*next.lo);
      if (next.hi) next.hi = floorOf(*next.hi);
    }
    if (next == box_[v]) return !next.empty();
    box_[v] = std::move(next);
    changed_ = true;
    return !box_[v].empty();
  }

  Expr simplify(const Expr& e) {
    return rewrite(
        e,
        [&](const Expr& x) {
          const Interval& b = box_[x->var()];
          return b.isPoint() ? mkConst(*b.lo != 0) : x;
        },
        [&](const Expr& x) {
          Rational rhs = x->rhs();
          std::vector<LinearTerm> rest;
          for (const auto& t : x->terms()) {
            if (box_[t.var].isPoint()) {
              rhs -= t.coeff * *box_[t.var].lo;
            } else {
              rest.push_back(t);
            }
          }
          const Interval act =
              activity(rest, [&](std::uint32_t v) { return box_[v]; });
          const bool canLe = !act.lo || *act.lo <= rhs;
          const bool canGe = !act.hi || *act.hi >= rhs;
          const bool mustLe = act.hi && *act.hi <= rhs;
          const bool mustGe = act.lo && *act.lo >= rhs;
          switch (x->op()) {
            case RelOp::Le:
              if (!canLe) return mkFalse();
              if (mustLe) return mkTrue();
              break;
            case RelOp::Ge:
              if (!canGe) return mkFalse();
              if (mustGe) return mkTrue();
              break;
            case RelOp::Eq:
              if (!canLe || !canGe) return mkFalse();
              if (mustLe && mustGe) return mkTrue();
              break;
          }
          if (rest.size() == x->terms().size()) return x;
          return mkLinRel(std::move(rest), x->op(), rhs);
        },
        [&](const Expr& x) {
          std::int64_t k = x->bound();
          std::vector<ExprVar> rest;
          for (auto v : x->cardVars()) {
            const Interval& b = box_[v];
            if (!b.isPoint()) {
              rest.push_back(v);
            } else if (*b.lo != 0) {
              --k;
            }
          }
          if (rest.size() == x->cardVars().size()) return x;
          return x->kind() == ExprKind::AtMost ? mkAtMost(std::move(rest), k)
                                               : mkExactly(std::move(rest), k);
        });
  }

  bool propagateRel(const std::vector<LinearTerm>& terms, RelOp op,
                    const Rational& rhs) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Interval others{Rational(0), Rational(0)};
      for (std::size_t j = 0; j < terms.size() && (others.lo || others.hi);
           ++j) {
        if (j == i) continue;
        const Interval part = activity({terms[j]}, [&](std::uint32_t v) {
          return box_[v];
        });
        if (others.lo) {
          if (part.lo) *others.lo += *part.lo; else others.lo.reset();
        }
        if (others.hi) {
          if (part.hi) *others.hi += *part.hi; else others.hi.reset();
        }
      }
      // a*x (op) rhs - others
      const Rational& a = terms[i].coeff;
      Interval ax;
      if ((op == RelOp::Le || op == RelOp::Eq) && others.lo) ax.hi = rhs - *others.lo;
      if ((op == RelOp::Ge || op == RelOp::Eq) && others.hi) ax.lo = rhs - *others.hi;
      Interval x;
      if (a > 0) {
        if (ax.lo) x.lo = *ax.lo / a;
        if (ax.hi) x.hi = *ax.hi / a;
      } else {
        if (ax.hi) x.lo = *ax.hi / a;
        if (ax.lo) x.hi = *ax.lo / a;
      }
      if (!tighten(terms[i].var, x)) return false;
    }
    return true;
  }

  bool unit(const Expr& u) {
    switch (u->kind()) {
      case ExprKind::Var:
        return tighten(u->var(), Interval::point(1));
      case ExprKind::LinRel:
        return propagateRel(u->terms(), u->op(), u->rhs());
      case ExprKind::Not: {
        const Expr& inner = u->kids()[0];
        if (inner->kind() == ExprKind::Var) {
          return tighten(inner->var(), Interval::point(0));
        }
        // The closure of the complement over-approximates, so bounds
        // derived from it are still implied.
        const Expr comp = pushNegations(inner, true, true, vars_);
        if (comp->kind() == ExprKind::LinRel) {
          return propagateRel(comp->terms(), comp->op(), comp->rhs());
        }
        return true;
      }
      case ExprKind::Exactly:
        return propagateRel(cardTerms(u->cardVars()), RelOp::Eq,
                            Rational(u->bound()));
      case ExprKind::AtMost:
        return propagateRel(cardTerms(u->cardVars()), RelOp::Le,
                            Rational(u->bound()));
      default:
        return true;
    }
  }

  void pureLiterals(const Expr& e) {
    std::vector<std::uint8_t> seen(vars_.size(), 0);  // bit0 pos, bit1 neg
    std::function<void(const Expr&, bool)> visit = [&](const Expr& x,
                                                       bool pos) {
      switch (x->kind()) {
        case ExprKind::Var:
          seen[x->var()] |= pos ? 1 : 2;
          break;
        case ExprKind::Not:
          visit(x->kids()[0], !pos);
          break;
        case ExprKind::And:
        case ExprKind::Or:
          for (const auto& k : x->kids()) visit(k, pos);
          break;
        case ExprKind::Implies:
          visit(x->kids()[0], !pos);
          visit(x->kids()[1], pos);
          break;
        case ExprKind::LinRel:
          for (const auto& t : x->terms()) seen[t.var] |= 3;
          break;
        case ExprKind::AtMost:
          for (auto v : x->cardVars()) seen[v] |= pos ? 2 : 1;
          break;
        case ExprKind::Exactly:
          for (auto v : x->cardVars()) seen[v] |= 3;
          break;
        case ExprKind::Const:
          break;
      }
    };
    visit(e, true);
    for (ExprVar v = 0; v < vars_.size(); ++v) {
      if (vars_[v].sort != Sort::Bool || box_[v].isPoint()) continue;
      if (seen[v] == 1) tighten(v, Interval::point(1));
      if (seen[v] == 2) tighten(v, Interval::point(0));
    }
  }

  const VarTable& vars_;
  std::vector<Interval> box_;
  bool changed_ = false;
};

}  // namespace

PsatResult psat(const Expr& e, const VarTable& vars,
                const std::vector<Interval>* boxes) {
  return Propagator(vars, boxes).run(e);
}

std::vector<ExprVar> exprVars(const Expr& e) {
  std::set<ExprVar> out;
  std::function<void(const Expr&)> go = [&](const Expr& x) {
    if (x->kind() == ExprKind::Var) out.insert(x->var());
    for (const auto& t : x->terms()) out.insert(t.var);
    for (auto v : x->cardVars()) out.insert(v);
    for (const auto& k : x->kids()) go(k);
  };
  go(e);
  return {out.begin(), out.end()};
}

namespace {

std::string sumText(const std::vector<LinearTerm>& terms,
                    const VarTable& vars) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Rational c = terms[i].coeff;
    if (i > 0) {
      out += c < 0 ? " - " : " + ";
      c = abs(c);
    } else if (c == -1) {
      out += "-";
      c = 1;
    }
    if (c != 1) out += formatRational(c) + "*";
    out += vars[terms[i].var].name;
  }
  return out;
}

}  // namespace

std::string toString(const Expr& e, const VarTable& vars) {
  auto join = [&](const char* sep) {
    std::string out = "(";
    for (std::size_t i = 0; i < e->kids().size(); ++i) {
      if (i) out += sep;
      out += toString(e->kids()[i], vars);
    }
    return out + ")";
  };
  auto cardList = [&](const char* name) {
    std::string out = name + std::to_string(e->bound()) + "(";
    for (std::size_t i = 0; i < e->cardVars().size(); ++i) {
      if (i) out += ", ";
      out += vars[e->cardVars()[i]].name;
    }
    return out + ")";
  };
  switch (e->kind()) {
    case ExprKind::Const:
      return e->value() ? "true" : "false";
    case ExprKind::Var:
      return vars[e->var()].name;
    case ExprKind::Not:
      return "!" + toString(e->kids()[0], vars);
    case ExprKind::And:
      return join(" & ");
    case ExprKind::Or:
      return join(" | ");
    case ExprKind::Implies:
      return join(" -> ");
    case ExprKind::LinRel:
      return sumText(e->terms(), vars) + " " +
             std::string(relOpSymbol(e->op())) + " " +
             formatRational(e->rhs());
    case ExprKind::AtMost:
      return cardList("atmost");
    case ExprKind::Exactly:
      return cardList("exactly");
  }
  return "?";
}

std::string smtSymbol(std::string_view name) {
  static const std::string_view extra = "~!@$%^&*_-+=<>.?/";
  const bool simple =
      !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0])) &&
      std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) ||
               extra.find(c) != std::string_view::npos;
      });
  if (simple) return std::string(name);
  std::string out = "|";
  for (char c : name) {
    if (c != '|' && c != '\\') out += c;
  }
  return out + "|";
}

namespace {

std::string smtNumber(const mpz_class& n, bool real) {
  std::string digits = mpz_class(abs(n)).get_str();
  if (real) digits += ".0";
  return n < 0 ? "(- " + digits + ")" : digits;
}

// Scaled integer sum; Booleans enter through ite, integers through
// to_real when reals are present.
std::string smtRelation(std::vector<LinearTerm> terms, RelOp op, Rational rhs,
                        const VarTable& vars) {
  scaleToIntegers(terms, rhs);
  const bool real = std::any_of(terms.begin(), terms.end(), [&](const auto& t) {
    return vars[t.var].sort == Sort::Real;
  });
  const char* one = real ? "1.0" : "1";
  const char* zero = real ? "0.0" : "0";
  std::vector<std::string> parts;
  for (const auto& t : terms) {
    const VarInfo& info = vars[t.var];
    std::string atom = smtSymbol(info.name);
    if (info.sort == Sort::Bool) {
      atom = "(ite " + atom + " " + one + " " + zero + ")";
    } else if (info.sort == Sort::Int && real) {
      atom = "(to_real " + atom + ")";
    }
    if (t.coeff != 1) atom = "(* " + smtNumber(t.coeff.get_num(), real) + " " + atom + ")";
    parts.push_back(std::move(atom));
  }
  std::string lhs = parts.size() == 1 ? parts[0] : "(+";
  if (parts.size() != 1) {
    for (const auto& p : parts) lhs += " " + p;
    lhs += ")";
  }
  const char* sym = op == RelOp::Le ? "<=" : op == RelOp::Ge ? ">=" : "=";
  return std::string("(") + sym + " " + lhs + " " +
         smtNumber(rhs.get_num(), real) + ")";
}

}  // namespace

std::string toSmtLib(const Expr& e, const VarTable& vars) {
  auto join = [&](const char* head) {
    std::string out = std::string("(") + head;
    for (const auto& k : e->kids()) out += " " + toSmtLib(k, vars);
    return out + ")";
  };
  switch (e->kind()) {
    case ExprKind::Const:
      return e->value() ? "true" : "false";
    case ExprKind::Var:
      return smtSymbol(vars[e->var()].name);
    case ExprKind::Not:
      return join("not");
    case ExprKind::And:
      return join("and");
    case ExprKind::Or:
      return join("or");
    case ExprKind::Implies:
      return join("=>");
    case ExprKind::LinRel:
      return smtRelation(e->terms(), e->op(), e->rhs(), vars);
    case ExprKind::AtMost:
    case ExprKind::Exactly:
      return smtRelation(cardTerms(e->cardVars()),
                         e->kind() == ExprKind::AtMost ? RelOp::Le : RelOp::Eq,
                         Rational(e->bound()), vars);
  }
  return "true";
}

}  // namespace petriplan
