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

#include "petriplan/encode.hpp"

#include <algorithm>
#include <set>

#include "petriplan/solve.hpp"

namespace petriplan {

namespace {

LpRow relationRow(const Expr& e) {
  switch (e->kind()) {
    case ExprKind::LinRel:
      return {e->terms(), e->op(), e->rhs()};
    case ExprKind::AtMost:
    case ExprKind::Exactly: {
      LpRow row;
      for (auto v : e->cardVars()) row.terms.push_back({v, Rational(1)});
      row.op = e->kind() == ExprKind::AtMost ? RelOp::Le : RelOp::Eq;
      row.rhs = e->bound();
      return row;
    }
    default:
      throw std::logic_error("not a relation atom");
  }
}

Lit asLit(const Expr& e) {
  if (e->kind() == ExprKind::Var) return {e->var(), true};
  return {e->kids()[0]->var(), false};
}

class PgBuilder {
 public:
  PgBuilder(VarTable& vars, const std::function<std::string()>& freshName)
      : vars_(vars), freshName_(freshName) {}

  // Asserts (ctx ∨ e); an empty context means e holds outright.
  void emit(const Clause& ctx, const Expr& e) {
    switch (e->kind()) {
      case ExprKind::Const:
        if (!e->value()) out.clauses.push_back(ctx);
        return;
      case ExprKind::Var:
      case ExprKind::Not: {
        Clause c = ctx;
        c.push_back(asLit(e));
        out.clauses.push_back(std::move(c));
        return;
      }
      case ExprKind::And:
        for (const auto& k : e->kids()) emit(ctx, k);
        return;
      case ExprKind::Or:
        emitOr(ctx, e);
        return;
      case ExprKind::LinRel:
      case ExprKind::AtMost:
      case ExprKind::Exactly:
        emitRelation(ctx, e);
        return;
      case ExprKind::Implies:
        throw std::logic_error("pgTransform expects negation normal form");
    }
  }

  PgResult out;

 private:
  ExprVar fresh() {
    const ExprVar v = vars_.add(freshName_(), Sort::Bool);
    out.auxVars.push_back(v);
    return v;
  }

  void emitOr(const Clause& ctx, const Expr& e) {
    Clause base = ctx;
    std::vector<Expr> complex;
    for (const auto& k : e->kids()) {
      if (k->isLiteral()) {
        base.push_back(asLit(k));
      } else {
        complex.push_back(k);
      }
    }
    if (complex.empty()) {
      out.clauses.push_back(std::move(base));
      return;
    }
    // A single non-literal disjunct needs no name of its own.
    if (complex.size() == 1) {
      emit(base, complex[0]);
      return;
    }
    std::vector<ExprVar> names;
    for (std::size_t i = 0; i < complex.size(); ++i) names.push_back(fresh());
    Clause c = base;
    for (auto v : names) c.push_back({v, true});
    out.clauses.push_back(std::move(c));
    for (std::size_t i = 0; i < complex.size(); ++i) {
      emit({{names[i], false}}, complex[i]);
    }
  }

  void emitRelation(const Clause& ctx, const Expr& e) {
    LpRow row = relationRow(e);
    if (ctx.empty()) {
      out.rows.push_back(std::move(row));
      return;
    }
    if (ctx.size() == 1) {
      // (l ∨ rel) is ¬l ⟹ rel.
      out.indicators.push_back({{ctx[0].var, !ctx[0].positive}, std::move(row)});
      return;
    }
    const ExprVar v = fresh();
    Clause c = ctx;
    c.push_back({v, true});
    out.clauses.push_back(std::move(c));
    out.indicators.push_back({{v, true}, std::move(row)});
  }

  VarTable& vars_;
  const std::function<std::string()>& freshName_;
};

MilpVarKind kindOf(Sort s) {
  switch (s) {
    case Sort::Bool:
      return MilpVarKind::Binary;
    case Sort::Int:
      return MilpVarKind::Integer;
    case Sort::Real:
      return MilpVarKind::Continuous;
  }
  return MilpVarKind::Continuous;
}

Interval rowActivity(const LpRow& row, const VarTable& vars) {
  return activity(row.terms, [&](std::uint32_t v) { return vars.box(v); });
}

[[noreturn]] void throwUnbounded(const LpRow& row, const VarTable& vars,
                                 bool needUpper) {
  for (const auto& t : row.terms) {
    const Interval b = vars.box(t.var);
    const bool up = (t.coeff > 0) == needUpper;
    if ((up && !b.hi) || (!up && !b.lo)) {
      throw UnboundedIndicatorError(vars[t.var].name);
    }
  }
  throw std::logic_error("unbounded activity without an unbounded variable");
}

// M for the Le side (needUpper) or the Ge side of a guarded row.
Rational sideM(const LpRow& row, const VarTable& vars, bool needUpper) {
  const Interval act = rowActivity(row, vars);
  if (needUpper) {
    if (!act.hi) throwUnbounded(row, vars, true);
    return kBigMScale * std::max(Rational(0), Rational(*act.hi - row.rhs));
  }
  if (!act.lo) throwUnbounded(row, vars, false);
  return kBigMScale * std::max(Rational(0), Rational(row.rhs - *act.lo));
}

// guard ⟹ row with the guard value g in {v, 1 - v}; the row is relaxed by
// M * (1 - g).
LpRow relaxedRow(const LpRow& row, RelOp side, const Rational& m,
                 const Lit& guard) {
  LpRow out;
  out.terms = row.terms;
  out.op = side;
  out.rhs = row.rhs;
  const Rational sign = side == RelOp::Le ? Rational(1) : Rational(-1);
  if (m != 0) {
    if (guard.positive) {
      // a·x ≤ b + M - M v  /  a·x ≥ b - M + M v
      out.terms.push_back({guard.var, sign * m});
      out.rhs += sign * m;
    } else {
      // a·x ≤ b + M v  /  a·x ≥ b - M v
      out.terms.push_back({guard.var, -sign * m});
    }
  }
  normalizeTerms(out.terms);
  return out;
}

}  // namespace

PgResult pgTransform(const Expr& e, VarTable& vars,
                     const std::function<std::string()>& freshName) {
  PgBuilder b(vars, freshName);
  b.emit({}, nnf(e, vars));
  return std::move(b.out);
}

Rational bigM(const LpRow& row, const VarTable& vars) {
  switch (row.op) {
    case RelOp::Le:
      return sideM(row, vars, true);
    case RelOp::Ge:
      return sideM(row, vars, false);
    case RelOp::Eq:
      return std::max(sideM(row, vars, true), sideM(row, vars, false));
  }
  return 0;
}

void appendMilp(MilpConstraintSet& out, const PgResult& pg,
                const VarTable& vars, TranslationMode mode) {
  for (std::size_t v = out.vars.size(); v < vars.size(); ++v) {
    const VarInfo& info = vars[static_cast<ExprVar>(v)];
    const Interval box = vars.box(static_cast<ExprVar>(v));
    out.vars.push_back({info.name, kindOf(info.sort), box.lo, box.hi});
  }
  for (const auto& clause : pg.clauses) {
    LpRow row;
    row.op = RelOp::Ge;
    row.rhs = 1;
    for (const auto& l : clause) {
      row.terms.push_back({l.var, Rational(l.positive ? 1 : -1)});
      if (!l.positive) row.rhs -= 1;
    }
    normalizeTerms(row.terms);
    out.rows.push_back(std::move(row));
  }
  for (const auto& r : pg.rows) out.rows.push_back(r);
  for (const auto& ind : pg.indicators) {
    if (mode == TranslationMode::Indicator) {
      out.indicators.push_back({ind.guard.var, ind.guard.positive, ind.row});
      continue;
    }
    if (ind.row.op != RelOp::Ge) {
      out.rows.push_back(relaxedRow(ind.row, RelOp::Le,
                                    sideM(ind.row, vars, true), ind.guard));
    }
    if (ind.row.op != RelOp::Le) {
      out.rows.push_back(relaxedRow(ind.row, RelOp::Ge,
                                    sideM(ind.row, vars, false), ind.guard));
    }
  }
}

MilpConstraintSet toMilp(const PgResult& pg, const VarTable& vars,
                         TranslationMode mode) {
  MilpConstraintSet out;
  appendMilp(out, pg, vars, mode);
  return out;
}

LinProgram MilpConstraintSet::toLinProgram() const {
  if (!indicators.empty()) {
    throw std::logic_error("indicator rows need the big-M translation first");
  }
  LinProgram lp;
  for (const auto& v : vars) {
    lp.addVar(v.name, v.lower, v.upper, v.kind != MilpVarKind::Continuous);
  }
  for (const auto& r : rows) lp.addRow(r.terms, r.op, r.rhs);
  lp.objective = objective;
  return lp;
}

// ---------------------------------------------------------------------------

std::vector<LinearRelation> boundPreconditions(const PetriNet& net,
                                               ActionId t) {
  std::vector<LinearRelation> out;
  for (const auto& e : net.eff[t]) {
    const auto* d = std::get_if<NumDelta>(&e);
    if (!d) continue;
    const Interval& b = net.bounds[d->var];
    LinearRelation rel;
    if (d->delta > 0 && b.hi) {
      rel = {{{d->var, Rational(1)}}, RelOp::Le, *b.hi - d->delta};
    } else if (d->delta < 0 && b.lo) {
      rel = {{{d->var, Rational(1)}}, RelOp::Ge, *b.lo - d->delta};
    } else {
      continue;
    }
    // Generated domains often state the bound guard explicitly already.
    const bool stated = std::any_of(
        net.pre[t].begin(), net.pre[t].end(), [&](const Condition& c) {
          const auto* r = std::get_if<LinearRelation>(&c);
          return r && *r == rel;
        });
    if (!stated) out.push_back(std::move(rel));
  }
  return out;
}

namespace {

// Can an effect of t falsify a precondition of u?
bool falsifies(const PetriNet& net, ActionId t, ActionId u,
               const std::vector<LinearRelation>& uBound) {
  auto relationHit = [&](const LinearRelation& rel, VarId v,
                         const Rational& delta) {
    for (const auto& term : rel.terms) {
      if (term.var != v) continue;
      const Rational change = term.coeff * delta;
      switch (rel.op) {
        case RelOp::Le:
          return change > 0;
        case RelOp::Ge:
          return change < 0;
        case RelOp::Eq:
          return change != 0;
      }
    }
    return false;
  };
  for (const auto& e : net.eff[t]) {
    if (const auto* b = std::get_if<BoolAssign>(&e)) {
      for (const auto& c : net.pre[u]) {
        const auto* lit = std::get_if<BoolLiteral>(&c);
        if (lit && lit->var == b->var && lit->polarity != b->value) return true;
      }
      continue;
    }
    const auto& d = std::get<NumDelta>(e);
    for (const auto& c : net.pre[u]) {
      const auto* rel = std::get_if<LinearRelation>(&c);
      if (rel && relationHit(*rel, d.var, d.delta)) return true;
    }
    for (const auto& rel : uBound) {
      if (relationHit(rel, d.var, d.delta)) return true;
    }
  }
  return false;
}

std::set<VarId> effectVars(const PetriNet& net, ActionId t) {
  std::set<VarId> out;
  for (const auto& e : net.eff[t]) out.insert(effectVar(e));
  return out;
}

}  // namespace

std::vector<std::pair<ActionId, ActionId>> transitionConflicts(
    const PetriNet& net) {
  std::vector<std::vector<LinearRelation>> bound;
  for (ActionId t = 0; t < net.transitionCount(); ++t) {
    bound.push_back(boundPreconditions(net, t));
  }
  std::vector<std::pair<ActionId, ActionId>> out;
  for (ActionId t = 0; t < net.transitionCount(); ++t) {
    for (ActionId u = t + 1; u < net.transitionCount(); ++u) {
      if (falsifies(net, t, u, bound[u]) || falsifies(net, u, t, bound[t])) {
        out.emplace_back(t, u);
      }
    }
  }
  return out;
}

namespace {

// Transitions whose effects touch variables of the same global constraint
// must not share a step: an interleaving could pass through a state that
// violates it.
std::vector<std::pair<ActionId, ActionId>> constraintConflicts(
    const PetriNet& net, const std::vector<Condition>& constraints) {
  std::vector<std::pair<ActionId, ActionId>> out;
  if (constraints.empty()) return out;
  std::vector<std::set<VarId>> touched;
  for (ActionId t = 0; t < net.transitionCount(); ++t) {
    touched.push_back(effectVars(net, t));
  }
  for (const auto& c : constraints) {
    const auto vars = conditionVars(c);
    std::vector<ActionId> hit;
    for (ActionId t = 0; t < net.transitionCount(); ++t) {
      if (std::any_of(vars.begin(), vars.end(),
                      [&](VarId v) { return touched[t].count(v) > 0; })) {
        hit.push_back(t);
      }
    }
    for (std::size_t i = 0; i < hit.size(); ++i) {
      for (std::size_t j = i + 1; j < hit.size(); ++j) {
        out.emplace_back(hit[i], hit[j]);
      }
    }
  }
  return out;
}

std::vector<std::vector<ActionId>> conflictCover(
    const PetriNet& net, const std::vector<Condition>& constraints) {
  auto edges = transitionConflicts(net);
  auto extra = constraintConflicts(net, constraints);
  edges.insert(edges.end(), extra.begin(), extra.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return greedyCliqueCover(edges);
}

Sort sortOf(VarKind k) {
  switch (k) {
    case VarKind::Boolean:
      return Sort::Bool;
    case VarKind::Integer:
      return Sort::Int;
    case VarKind::Real:
      return Sort::Real;
  }
  return Sort::Real;
}

}  // namespace

// ---------------------------------------------------------------------------

HorizonEncoder::HorizonEncoder(const PetriNet& net,
                               const std::vector<Condition>& constraints,
                               std::vector<MutexGroup> invariants,
                               ReachableSets forward)
    : net_(net),
      constraints_(constraints),
      invariants_(std::move(invariants)),
      forward_(std::move(forward)) {
  conflictGroups_ = conflictCover(net_, constraints_);
  for (ActionId t = 0; t < net_.transitionCount(); ++t) {
    boundPre_.push_back(boundPreconditions(net_, t));
  }
}

const StepEncoding& HorizonEncoder::encodeInitial() {
  if (!steps_.empty()) return steps_[0];
  StepEncoding enc;
  enc.step = 0;
  for (VarId p = 0; p < net_.placeCount(); ++p) {
    enc.placeVars.push_back({std::nullopt, net_.initMarking[p]});
  }
  steps_.push_back(std::move(enc));
  return steps_[0];
}

std::vector<LinearTerm> HorizonEncoder::linearAt(
    const std::vector<LinearTerm>& terms, int k, Rational& constant) const {
  std::vector<LinearTerm> out;
  for (const auto& t : terms) {
    const PlaceValue& pv = steps_[k].placeVars[t.var];
    if (pv.isConst()) {
      constant += t.coeff * pv.constant;
    } else {
      out.push_back({*pv.var, t.coeff});
    }
  }
  return out;
}

Expr HorizonEncoder::conditionAt(const Condition& c, int k) const {
  if (const auto* lit = std::get_if<BoolLiteral>(&c)) {
    return placeEquals(lit->var, Rational(lit->polarity ? 1 : 0), k);
  }
  const auto& rel = std::get<LinearRelation>(c);
  Rational constant = 0;
  auto terms = linearAt(rel.terms, k, constant);
  return mkLinRel(std::move(terms), rel.op, rel.rhs - constant);
}

Expr HorizonEncoder::placeEquals(VarId place, const Rational& value,
                                 int k) const {
  const PlaceValue& pv = steps_[k].placeVars[place];
  if (pv.isConst()) return mkConst(pv.constant == value);
  if (net_.isBoolean(place)) {
    if (value != 0 && value != 1) return mkFalse();
    return mkLit(*pv.var, value == 1);
  }
  return mkLinRel({{*pv.var, Rational(1)}}, RelOp::Eq, value);
}

Expr HorizonEncoder::placeWithin(VarId place, const Interval& iv,
                                 int k) const {
  const PlaceValue& pv = steps_[k].placeVars[place];
  if (pv.isConst()) return mkConst(iv.contains(pv.constant));
  if (iv.isPoint()) return placeEquals(place, *iv.lo, k);
  std::vector<Expr> parts;
  if (net_.isBoolean(place)) {
    if (iv.lo && *iv.lo > 0) parts.push_back(mkVar(*pv.var));
    if (iv.hi && *iv.hi < 1) parts.push_back(mkNot(mkVar(*pv.var)));
    return mkAnd(std::move(parts));
  }
  if (iv.lo) parts.push_back(mkLinRel({{*pv.var, Rational(1)}}, RelOp::Ge, *iv.lo));
  if (iv.hi) parts.push_back(mkLinRel({{*pv.var, Rational(1)}}, RelOp::Le, *iv.hi));
  return mkAnd(std::move(parts));
}

Expr HorizonEncoder::fires(ActionId t, int k) const {
  const auto& v = steps_[k + 1].transVars[t];
  return v ? mkVar(*v) : mkFalse();
}

Expr HorizonEncoder::groupAt(const MutexGroup& g, int k) const {
  std::vector<ExprVar> vars;
  std::int64_t trueConsts = 0;
  for (VarId p : g.members) {
    const PlaceValue& pv = steps_[k].placeVars[p];
    if (pv.isConst()) {
      trueConsts += pv.constant != 0 ? 1 : 0;
    } else {
      vars.push_back(*pv.var);
    }
  }
  return g.kind == MutexGroup::Kind::ExactlyOne
             ? mkExactly(std::move(vars), 1 - trueConsts)
             : mkAtMost(std::move(vars), 1 - trueConsts);
}

Expr HorizonEncoder::numericFlow(VarId place, int k) const {
  // p@k - p@(k-1) - sum(delta * tau) = 0
  Rational constant = 0;
  std::vector<LinearTerm> terms =
      linearAt({{place, Rational(1)}}, k, constant);
  Rational before = 0;
  for (auto& t : linearAt({{place, Rational(1)}}, k - 1, before)) {
    terms.push_back({t.var, -t.coeff});
  }
  constant -= before;
  for (ActionId t = 0; t < net_.transitionCount(); ++t) {
    const Rational w = net_.incidence.at(place, t);
    const auto& tv = steps_[k].transVars[t];
    if (w == 0 || !tv) continue;
    terms.push_back({*tv, -w});
  }
  return mkLinRel(std::move(terms), RelOp::Eq, -constant);
}

Expr HorizonEncoder::booleanFlow(VarId place, int k) const {
  std::vector<Expr> setTrue;
  std::vector<Expr> setFalse;
  for (const auto& arc : net_.arcs) {
    if (arc.place != place || arc.kind == ArcKind::PreOnly) continue;
    const auto& tv = steps_[k].transVars[arc.transition];
    if (!tv) continue;
    (arc.polarity ? setTrue : setFalse).push_back(mkVar(*tv));
  }
  const Expr before = placeEquals(place, Rational(1), k - 1);
  const Expr after = placeEquals(place, Rational(1), k);
  return mkAnd(mkImplies(mkAnd(mkNot(before), after), mkOr(std::move(setTrue))),
               mkImplies(mkAnd(before, mkNot(after)), mkOr(std::move(setFalse))));
}

void HorizonEncoder::push(SolverState& st, StepEncoding& enc, Expr e) {
  if (e->isConst(true)) return;
  st.assertExpr(e);
  enc.assertions.push_back(std::move(e));
}

const StepEncoding& HorizonEncoder::encodeStep(SolverState& st) {
  encodeInitial();
  const int k = steps();
  const StepSets& sets = forward_.at(k);
  const StepSets& prevSets = forward_.at(k - 1);

  StepEncoding enc;
  enc.step = k;
  for (VarId p = 0; p < net_.placeCount(); ++p) {
    auto it = sets.bindings.find(p);
    if (it != sets.bindings.end()) {
      enc.placeVars.push_back({std::nullopt, it->second});
      continue;
    }
    Interval box = net_.bounds[p];
    if (!net_.isBoolean(p) && p < sets.intervals.size()) {
      box = box.intersect(sets.intervals[p]);
    }
    const ExprVar v = st.declare(net_.places[p].name + "@" + std::to_string(k),
                                 sortOf(net_.places[p].kind), box.lo, box.hi);
    enc.placeVars.push_back({v, Rational(0)});
  }
  for (ActionId t = 0; t < net_.transitionCount(); ++t) {
    if (t < prevSets.disabled.size() && prevSets.disabled[t]) {
      enc.transVars.push_back(std::nullopt);
      continue;
    }
    enc.transVars.push_back(st.declare(
        "act:" + net_.transitions[t] + "@" + std::to_string(k - 1), Sort::Bool));
  }
  steps_.push_back(std::move(enc));
  StepEncoding& cur = steps_.back();

  for (ActionId t = 0; t < net_.transitionCount(); ++t) {
    if (!cur.transVars[t]) continue;
    const Expr tau = mkVar(*cur.transVars[t]);
    for (const auto& c : net_.pre[t]) {
      push(st, cur, mkImplies(tau, conditionAt(c, k - 1)));
    }
    for (const auto& rel : boundPre_[t]) {
      push(st, cur, mkImplies(tau, conditionAt(rel, k - 1)));
    }
  }
  for (const auto& arc : net_.arcs) {
    if (!net_.isBoolean(arc.place) || !cur.transVars[arc.transition]) continue;
    push(st, cur,
         mkImplies(mkVar(*cur.transVars[arc.transition]),
                   placeEquals(arc.place, Rational(arc.polarity ? 1 : 0), k)));
  }
  for (VarId p = 0; p < net_.placeCount(); ++p) {
    push(st, cur, net_.isBoolean(p) ? booleanFlow(p, k) : numericFlow(p, k));
  }
  for (const auto& group : conflictGroups_) {
    std::vector<ExprVar> taus;
    for (ActionId t : group) {
      if (cur.transVars[t]) taus.push_back(*cur.transVars[t]);
    }
    push(st, cur, mkAtMost(std::move(taus), 1));
  }
  if (k == 1 && !constraints_.empty() &&
      !holdsAll(constraints_, net_.initMarking)) {
    // The first action of a serial run must repair the initial state.
    std::vector<ExprVar> taus;
    for (const auto& tv : cur.transVars) {
      if (tv) taus.push_back(*tv);
    }
    push(st, cur, mkAtMost(std::move(taus), 1));
  }
  for (const auto& g : invariants_) push(st, cur, groupAt(g, k));
  for (const auto& c : constraints_) push(st, cur, conditionAt(c, k));
  return cur;
}

void HorizonEncoder::addConstraints(SolverState& st,
                                    const std::vector<Condition>& extra) {
  constraints_.insert(constraints_.end(), extra.begin(), extra.end());
  const auto groups = conflictCover(net_, constraints_);
  const bool newGroups = groups != conflictGroups_;
  conflictGroups_ = groups;
  for (int k = 1; k < steps(); ++k) {
    StepEncoding& enc = steps_[k];
    for (const auto& c : extra) push(st, enc, conditionAt(c, k));
    if (newGroups) {
      for (const auto& group : conflictGroups_) {
        std::vector<ExprVar> taus;
        for (ActionId t : group) {
          if (enc.transVars[t]) taus.push_back(*enc.transVars[t]);
        }
        push(st, enc, mkAtMost(std::move(taus), 1));
      }
    }
    if (k == 1 && !holdsAll(constraints_, net_.initMarking)) {
      std::vector<ExprVar> taus;
      for (const auto& tv : enc.transVars) {
        if (tv) taus.push_back(*tv);
      }
      push(st, enc, mkAtMost(std::move(taus), 1));
    }
  }
}

void HorizonEncoder::addInvariants(SolverState& st,
                                   const std::vector<MutexGroup>& groups) {
  for (const auto& g : groups) {
    if (std::find(invariants_.begin(), invariants_.end(), g) !=
        invariants_.end()) {
      continue;
    }
    for (int k = 1; k < steps(); ++k) push(st, steps_[k], groupAt(g, k));
  }
  invariants_ = groups;
}

void HorizonEncoder::refineForward(SolverState& st, ReachableSets forward) {
  forward_ = std::move(forward);
  for (int k = 1; k < steps(); ++k) {
    StepEncoding& enc = steps_[k];
    const StepSets& sets = forward_.at(k);
    for (const auto& [p, value] : sets.bindings) {
      if (!enc.placeVars[p].isConst()) push(st, enc, placeEquals(p, value, k));
    }
    for (VarId p = 0; p < sets.intervals.size(); ++p) {
      if (!net_.isBoolean(p) && !enc.placeVars[p].isConst()) {
        push(st, enc, placeWithin(p, sets.intervals[p], k));
      }
    }
    const StepSets& prev = forward_.at(k - 1);
    for (ActionId t = 0; t < prev.disabled.size(); ++t) {
      if (prev.disabled[t] && enc.transVars[t]) {
        push(st, enc, mkNot(mkVar(*enc.transVars[t])));
      }
    }
  }
}

}  // namespace petriplan
