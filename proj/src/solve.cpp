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

#include "petriplan/solve.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace petriplan {

namespace {

constexpr char kAuxPrefix[] = "%aux";
constexpr char kAssumePrefix[] = "%assume";

struct EngineRow {
  std::vector<LinearTerm> terms;  // over expression variables
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  Simplex::Var slack = 0;
  // Rows over Booleans only are left to propagation and branching.
  bool inLp = false;
  bool guarded = false;
  ExprVar guard = 0;
  bool activeWhen = true;
};

struct TrailEntry {
  ExprVar var;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
};

void rowBounds(const LpRow& row, std::optional<Rational>& lo,
               std::optional<Rational>& hi) {
  if (row.op != RelOp::Ge) hi = row.rhs;
  if (row.op != RelOp::Le) lo = row.rhs;
}

}  // namespace

struct SolverState::Impl {
  explicit Impl(SolverOptions o) : opts(o), lp(o.pivotLimit) {}

  SolverOptions opts;
  VarTable vars;
  std::vector<Expr> assertions;
  // Guard implications of complex assumptions; inert while the guard is 0.
  std::vector<Expr> internal;
  std::vector<PgResult> pgs;
  MilpConstraintSet cache;
  std::size_t auxCounter = 0;
  std::unordered_set<ExprVar> hidden;
  std::unordered_map<Expr, ExprVar, ExprHash, ExprEqual> assumeGuards;

  Simplex lp;
  std::vector<Simplex::Var> col;
  std::vector<std::optional<Rational>> lo, hi;
  std::vector<EngineRow> rows;
  std::vector<std::vector<std::uint32_t>> occ;
  std::vector<std::vector<std::uint32_t>> guardRows;
  bool inconsistent = false;

  std::vector<TrailEntry> trail;
  std::deque<std::uint32_t> queue;
  std::vector<bool> queued;

  std::optional<Model> incumbent;
  SolverStats stats;

  // -- search state of the current check
  const std::vector<LinearTerm>* objective = nullptr;
  bool objectiveIntegral = false;
  std::optional<Rational> bestObjective;
  std::optional<Model> best;
  std::uint64_t nodes = 0;
  bool tempInconsistent = false;

  // ---------------------------------------------------------------------

  void registerVar(ExprVar v) {
    Interval box = vars.box(v);
    if (vars.isIntegral(v)) {
      if (box.lo) box.lo = ceilOf(*box.lo);
      if (box.hi) box.hi = floorOf(*box.hi);
    }
    col.push_back(lp.addVariable());
    lo.push_back(box.lo);
    hi.push_back(box.hi);
    occ.emplace_back();
    guardRows.emplace_back();
    if (box.empty()) inconsistent = true;
    lp.setBounds(col[v], box.lo, box.hi);
  }

  void registerNewVars() {
    while (col.size() < vars.size()) {
      registerVar(static_cast<ExprVar>(col.size()));
    }
  }

  std::string freshAux() { return kAuxPrefix + std::to_string(auxCounter++); }

  bool isActive(const EngineRow& r) const {
    if (!r.guarded) return true;
    const auto& l = lo[r.guard];
    const auto& h = hi[r.guard];
    return l && h && *l == *h && (*l == 1) == r.activeWhen;
  }

  void syncVar(ExprVar v) {
    lp.setBounds(col[v], lo[v], hi[v]);
    for (auto r : guardRows[v]) {
      const EngineRow& row = rows[r];
      if (!row.inLp) continue;
      if (isActive(row)) {
        lp.setBounds(row.slack, row.lo, row.hi);
      } else {
        lp.setBounds(row.slack, std::nullopt, std::nullopt);
      }
    }
  }

  void enqueue(std::uint32_t r) {
    if (r >= queued.size()) queued.resize(rows.size(), false);
    if (!queued[r]) {
      queued[r] = true;
      queue.push_back(r);
    }
  }

  // Tightens the current box of v; false when it becomes empty.
  bool tighten(ExprVar v, std::optional<Rational> nlo,
               std::optional<Rational> nhi) {
    if (vars.isIntegral(v)) {
      if (nlo) nlo = ceilOf(*nlo);
      if (nhi) nhi = floorOf(*nhi);
    }
    const bool raiseLo = nlo && (!lo[v] || *nlo > *lo[v]);
    const bool dropHi = nhi && (!hi[v] || *nhi < *hi[v]);
    if (!raiseLo && !dropHi) return true;
    trail.push_back({v, lo[v], hi[v]});
    if (raiseLo) lo[v] = nlo;
    if (dropHi) hi[v] = nhi;
    for (auto r : occ[v]) enqueue(r);
    for (auto r : guardRows[v]) enqueue(r);
    return !(lo[v] && hi[v] && *lo[v] > *hi[v]);
  }

  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      TrailEntry e = std::move(trail.back());
      trail.pop_back();
      lo[e.var] = std::move(e.lo);
      hi[e.var] = std::move(e.hi);
      syncVar(e.var);
    }
  }

  void clearQueue() {
    for (auto r : queue) queued[r] = false;
    queue.clear();
  }

  // Bounds propagation over active rows; guards of rows that cannot hold
  // are switched off.
  bool propagate() {
    std::size_t budget = 8 * rows.size() + 1000;
    while (!queue.empty()) {
      const std::uint32_t r = queue.front();
      queue.pop_front();
      queued[r] = false;
      if (budget-- == 0) break;
      if (!propagateRow(r)) {
        clearQueue();
        return false;
      }
    }
    clearQueue();
    return true;
  }

  bool propagateRow(std::uint32_t r) {
    const EngineRow& row = rows[r];
    const bool active = isActive(row);
    if (row.guarded && !active) {
      const auto& gl = lo[row.guard];
      const auto& gh = hi[row.guard];
      if (gl && gh && *gl == *gh) return true;  // fixed to the inactive side
    }
    // Activity bounds; count infinite contributions.
    Rational minAct = 0, maxAct = 0;
    int minInf = 0, maxInf = 0;
    for (const auto& t : row.terms) {
      const auto& l = lo[t.var];
      const auto& h = hi[t.var];
      const auto& forMin = t.coeff > 0 ? l : h;
      const auto& forMax = t.coeff > 0 ? h : l;
      if (forMin) {
        minAct += t.coeff * *forMin;
      } else {
        ++minInf;
      }
      if (forMax) {
        maxAct += t.coeff * *forMax;
      } else {
        ++maxInf;
      }
    }
    const bool violated = (row.hi && minInf == 0 && minAct > *row.hi) ||
                          (row.lo && maxInf == 0 && maxAct < *row.lo);
    if (!active) {
      if (violated) {
        const Rational off(row.activeWhen ? 0 : 1);
        return tighten(row.guard, off, off);
      }
      return true;
    }
    if (violated) return false;
    for (const auto& t : row.terms) {
      const auto& l = lo[t.var];
      const auto& h = hi[t.var];
      const auto& forMin = t.coeff > 0 ? l : h;
      const auto& forMax = t.coeff > 0 ? h : l;
      std::optional<Rational> nlo, nhi;
      if (row.hi && (minInf == 0 || (minInf == 1 && !forMin))) {
        Rational rest = minAct;
        if (forMin) rest -= t.coeff * *forMin;
        const Rational b = (*row.hi - rest) / t.coeff;
        (t.coeff > 0 ? nhi : nlo) = b;
      }
      if (row.lo && (maxInf == 0 || (maxInf == 1 && !forMax))) {
        Rational rest = maxAct;
        if (forMax) rest -= t.coeff * *forMax;
        const Rational b = (*row.lo - rest) / t.coeff;
        auto& slot = t.coeff > 0 ? nlo : nhi;
        if (!slot) {
          slot = b;
        } else if (t.coeff > 0) {
          slot = std::max(*slot, b);
        } else {
          slot = std::min(*slot, b);
        }
      }
      // Continuous variables only take tightenings that fix a side which
      // was open; this keeps propagation finite.
      if (!vars.isIntegral(t.var)) {
        if (nlo && l) nlo.reset();
        if (nhi && h) nhi.reset();
      }
      if (!tighten(t.var, nlo, nhi)) return false;
    }
    return true;
  }

  // Adds one translated row. Temporary rows come last and are removed
  // after the check.
  void addRow(LpRow row, bool guarded, ExprVar guard, bool activeWhen,
              bool temporary) {
    normalizeTerms(row.terms);
    std::optional<Rational> rlo, rhi;
    rowBounds(row, rlo, rhi);
    if (row.terms.empty()) {
      if (compare(Rational(0), row.op, row.rhs)) return;
      if (guarded) {
        const Rational off(activeWhen ? 0 : 1);
        fixBound(guard, off, off, temporary);
      } else if (temporary) {
        tempInconsistent = true;
      } else {
        inconsistent = true;
      }
      return;
    }
    if (!guarded && row.terms.size() == 1) {
      const auto& t = row.terms[0];
      std::optional<Rational> blo, bhi;
      if (rlo) (t.coeff > 0 ? blo : bhi) = *rlo / t.coeff;
      if (rhi) (t.coeff > 0 ? bhi : blo) = *rhi / t.coeff;
      fixBound(t.var, blo, bhi, temporary);
      return;
    }
    EngineRow er;
    er.inLp = std::any_of(row.terms.begin(), row.terms.end(),
                          [&](const LinearTerm& t) {
                            return vars[t.var].sort != Sort::Bool;
                          });
    if (er.inLp) {
      std::vector<LinearTerm> mapped;
      for (const auto& t : row.terms) mapped.push_back({col[t.var], t.coeff});
      er.slack = lp.addRow(mapped);
    }
    er.terms = std::move(row.terms);
    er.lo = rlo;
    er.hi = rhi;
    er.guarded = guarded;
    er.guard = guard;
    er.activeWhen = activeWhen;
    const auto idx = static_cast<std::uint32_t>(rows.size());
    for (const auto& t : er.terms) occ[t.var].push_back(idx);
    if (guarded) guardRows[guard].push_back(idx);
    rows.push_back(std::move(er));
    queued.push_back(false);
    if (rows.back().inLp && isActive(rows.back())) {
      lp.setBounds(rows.back().slack, rlo, rhi);
    }
  }

  void fixBound(ExprVar v, std::optional<Rational> nlo,
                std::optional<Rational> nhi, bool temporary) {
    if (temporary) {
      if (!tighten(v, nlo, nhi)) tempInconsistent = true;
      syncVar(v);
      return;
    }
    // Persistent: rewrite the base box (the trail is empty between checks).
    if (!tighten(v, nlo, nhi)) inconsistent = true;
    trail.clear();
    clearQueue();
    syncVar(v);
  }

  void absorb(const Expr& e) {
    const std::size_t before = vars.size();
    PgResult pg = pgTransform(e, vars, [this] { return freshAux(); });
    for (std::size_t v = before; v < vars.size(); ++v) {
      hidden.insert(static_cast<ExprVar>(v));
    }
    registerNewVars();
    const std::size_t r0 = cache.rows.size();
    const std::size_t i0 = cache.indicators.size();
    appendMilp(cache, pg, vars, TranslationMode::Indicator);
    for (std::size_t i = r0; i < cache.rows.size(); ++i) {
      addRow(cache.rows[i], false, 0, true, false);
    }
    for (std::size_t i = i0; i < cache.indicators.size(); ++i) {
      const auto& ind = cache.indicators[i];
      addRow(ind.row, true, ind.guard, ind.activeWhen, false);
    }
    pgs.push_back(std::move(pg));
  }

  void requireDeclared(const Expr& e) const {
    for (auto v : exprVars(e)) {
      if (v >= vars.size()) {
        throw std::invalid_argument("undeclared variable id " +
                                    std::to_string(v));
      }
    }
  }

  // ---------------------------------------------------------------------
  // Assumptions

  bool isSimple(const Expr& a) const {
    switch (a->kind()) {
      case ExprKind::Const:
      case ExprKind::Var:
      case ExprKind::LinRel:
        return true;
      case ExprKind::Not:
        return a->isLiteral();
      case ExprKind::And:
        return std::all_of(a->kids().begin(), a->kids().end(),
                           [&](const Expr& k) { return isSimple(k); });
      default:
        return false;
    }
  }

  ExprVar guardFor(const Expr& a) {
    auto it = assumeGuards.find(a);
    if (it != assumeGuards.end()) return it->second;
    const ExprVar g = vars.add(kAssumePrefix + std::to_string(auxCounter++),
                               Sort::Bool);
    hidden.insert(g);
    registerNewVars();
    const Expr imp = mkImplies(mkVar(g), a);
    internal.push_back(imp);
    absorb(imp);
    assumeGuards.emplace(a, g);
    return g;
  }

  void compileSimple(const Expr& a) {
    switch (a->kind()) {
      case ExprKind::Const:
        if (!a->value()) tempInconsistent = true;
        return;
      case ExprKind::Var:
        fixBound(a->var(), Rational(1), Rational(1), true);
        return;
      case ExprKind::Not:
        fixBound(a->kids()[0]->var(), Rational(0), Rational(0), true);
        return;
      case ExprKind::And:
        for (const auto& k : a->kids()) compileSimple(k);
        return;
      case ExprKind::LinRel:
        addRow({a->terms(), a->op(), a->rhs()}, false, 0, true, true);
        return;
      default:
        return;
    }
  }

  void removeTemporaryRows(std::size_t keep) {
    while (rows.size() > keep) {
      EngineRow& r = rows.back();
      for (const auto& t : r.terms) occ[t.var].pop_back();
      if (r.inLp) lp.removeRow(r.slack);
      rows.pop_back();
      queued.pop_back();
    }
  }

  // ---------------------------------------------------------------------
  // Branch and bound

  Rational objectiveValue() const {
    Rational v = 0;
    for (const auto& t : *objective) v += t.coeff * lp.value(col[t.var]);
    return v;
  }

  Model currentModel() const {
    Model m(vars.size());
    for (ExprVar v = 0; v < vars.size(); ++v) m[v] = lp.value(col[v]);
    return m;
  }

  bool rowHolds(const EngineRow& r) const {
    Rational s = 0;
    for (const auto& t : r.terms) s += t.coeff * lp.value(col[t.var]);
    return (!r.lo || s >= *r.lo) && (!r.hi || s <= *r.hi);
  }

  bool preferUp(ExprVar v, const Rational& value) const {
    if (opts.warmStart && incumbent && v < incumbent->size()) {
      return (*incumbent)[v] > value;
    }
    const Rational frac = value - floorOf(value);
    return frac >= Rational(1, 2);
  }

  // True when the search is over (a model was found in feasibility mode).
  bool dfs() {
    if (++nodes > opts.nodeLimit) {
      throw NodeLimitError("branch-and-bound node limit exceeded");
    }
    const std::size_t mark = trail.size();
    const bool stop = explore(mark);
    undo(mark);
    return stop;
  }

  bool explore(std::size_t mark) {
    if (!propagate()) return false;
    for (std::size_t i = mark; i < trail.size(); ++i) syncVar(trail[i].var);
    if (objective) {
      std::vector<LinearTerm> mapped;
      for (const auto& t : *objective) mapped.push_back({col[t.var], t.coeff});
      const auto st = lp.minimize(mapped);
      if (st == Simplex::OptStatus::Infeasible) return false;
      if (st == Simplex::OptStatus::Optimal && bestObjective) {
        Rational bound = objectiveValue();
        if (objectiveIntegral) bound = ceilOf(bound);
        if (bound >= *bestObjective) return false;
      }
    } else if (lp.check() == Simplex::Status::Infeasible) {
      return false;
    }

    // Most fractional integer variable, lowest id on ties.
    std::optional<ExprVar> branchVar;
    Rational bestDist;
    for (ExprVar v = 0; v < vars.size(); ++v) {
      if (!vars.isIntegral(v)) continue;
      const Rational& val = lp.value(col[v]);
      if (isIntegral(val)) continue;
      Rational dist = val - floorOf(val) - Rational(1, 2);
      if (dist < 0) dist = -dist;
      if (!branchVar || dist < bestDist) {
        branchVar = v;
        bestDist = dist;
      }
    }
    if (!branchVar) {
      for (const auto& r : rows) {
        if (!r.guarded || isActive(r)) continue;
        const auto& gl = lo[r.guard];
        const auto& gh = hi[r.guard];
        if (gl && gh && *gl == *gh) continue;
        const bool onActive = (lp.value(col[r.guard]) == 1) == r.activeWhen;
        if (onActive && !rowHolds(r)) {
          branchVar = r.guard;
          break;
        }
      }
    }
    // Boolean rows outside the LP: branch on a free variable of the first
    // violated one, toward satisfying it.
    std::optional<Rational> forced;
    if (!branchVar) {
      for (const auto& r : rows) {
        if (r.inLp) continue;
        bool active = isActive(r);
        if (r.guarded && !active) {
          const auto& gl = lo[r.guard];
          const auto& gh = hi[r.guard];
          if (gl && gh && *gl == *gh) continue;
          if ((lp.value(col[r.guard]) == 1) != r.activeWhen) continue;
        }
        Rational sum = 0;
        for (const auto& t : r.terms) sum += t.coeff * lp.value(col[t.var]);
        const bool tooHigh = r.hi && sum > *r.hi;
        const bool tooLow = r.lo && sum < *r.lo;
        if (!tooHigh && !tooLow) continue;
        if (r.guarded && !active) {
          branchVar = r.guard;
          break;
        }
        for (const auto& t : r.terms) {
          if (lo[t.var] && hi[t.var] && *lo[t.var] == *hi[t.var]) continue;
          branchVar = t.var;
          forced = (t.coeff > 0) == tooLow ? Rational(1) : Rational(0);
          break;
        }
        if (!branchVar) return false;
        break;
      }
    }
    if (!branchVar) {
      const Model m = currentModel();
      if (!objective) {
        best = m;
        return true;
      }
      const Rational val = objectiveValue();
      if (!bestObjective || val < *bestObjective) {
        bestObjective = val;
        best = m;
      }
      return false;
    }

    const ExprVar v = *branchVar;
    const Rational val = lp.value(col[v]);
    // Fractional: split at the value. Integral (a guard whose row is
    // violated): the current value against the other one.
    std::optional<Rational> firstLo, firstHi, secondLo, secondHi;
    if (isIntegral(val)) {
      const Rational other = val == 0 ? Rational(1) : Rational(0);
      bool keep = !forced || *forced == val;
      if (opts.warmStart && incumbent && v < incumbent->size()) {
        keep = (*incumbent)[v] == val;
      }
      const Rational a = keep ? val : other;
      const Rational b = keep ? other : val;
      firstLo = firstHi = a;
      secondLo = secondHi = b;
    } else if (preferUp(v, val)) {
      firstLo = ceilOf(val);
      secondHi = floorOf(val);
    } else {
      firstHi = floorOf(val);
      secondLo = ceilOf(val);
    }
    for (int side = 0; side < 2; ++side) {
      const std::size_t m2 = trail.size();
      const bool ok = side == 0 ? tighten(v, firstLo, firstHi)
                                : tighten(v, secondLo, secondHi);
      syncVar(v);
      if (ok && dfs()) {
        undo(m2);
        return true;
      }
      clearQueue();
      undo(m2);
    }
    return false;
  }

  bool modelHolds(const Model& m, const std::vector<Expr>& assumptions) const {
    auto ok = [&](const Expr& e) { return evaluate(e, m); };
    return std::all_of(assertions.begin(), assertions.end(), ok) &&
           std::all_of(internal.begin(), internal.end(), ok) &&
           std::all_of(assumptions.begin(), assumptions.end(), ok);
  }

  CheckResult run(const std::vector<Expr>& assumptions,
                  const std::vector<LinearTerm>* obj) {
    ++stats.checks;
    for (const auto& a : assumptions) requireDeclared(a);
    if (obj) {
      for (const auto& t : *obj) {
        if (t.var >= vars.size()) {
          throw std::invalid_argument("objective uses an undeclared variable");
        }
      }
    }
    lp.setPivotLimit(lp.pivots() + opts.pivotLimit);
    CheckResult res;
    if (inconsistent) return res;

    if (!obj && opts.warmStart && incumbent &&
        incumbent->size() == vars.size() && modelHolds(*incumbent, assumptions)) {
      ++stats.warmStartHits;
      res.status = CheckResult::Status::Sat;
      res.model = *incumbent;
      return res;
    }

    // Complex assumptions become guarded persistent implications first.
    std::vector<Expr> simple;
    for (const auto& a : assumptions) {
      if (isSimple(a)) {
        simple.push_back(a);
      } else {
        simple.push_back(mkVar(guardFor(a)));
      }
    }
    if (inconsistent) return res;

    const std::size_t keepRows = rows.size();
    tempInconsistent = false;
    objective = obj;
    objectiveIntegral = false;
    if (obj) {
      objectiveIntegral = std::all_of(obj->begin(), obj->end(), [&](const auto& t) {
        return vars.isIntegral(t.var) && isIntegral(t.coeff);
      });
    }
    bestObjective.reset();
    best.reset();
    nodes = 0;

    auto cleanup = [&] {
      clearQueue();
      undo(0);
      removeTemporaryRows(keepRows);
      objective = nullptr;
      stats.nodes += nodes;
      stats.pivots = lp.pivots();
    };

    try {
      for (const auto& a : simple) compileSimple(a);
      if (!tempInconsistent) {
        for (std::uint32_t r = 0; r < rows.size(); ++r) enqueue(r);
        dfs();
      }
    } catch (...) {
      cleanup();
      throw;
    }
    res.nodes = nodes;
    cleanup();

    if (best) {
      if (!modelHolds(*best, assumptions)) {
        throw std::logic_error("solver produced a model that fails its input");
      }
      res.status = CheckResult::Status::Sat;
      res.model = *best;
      if (obj) {
        Rational v = 0;
        for (const auto& t : *obj) v += t.coeff * res.model[t.var];
        res.objective = v;
      }
      incumbent = res.model;
    }
    return res;
  }
};

SolverState::SolverState(SolverOptions opts)
    : impl_(std::make_unique<Impl>(opts)) {}
SolverState::~SolverState() = default;
SolverState::SolverState(SolverState&&) noexcept = default;
SolverState& SolverState::operator=(SolverState&&) noexcept = default;

ExprVar SolverState::declare(const std::string& name, Sort sort,
                             std::optional<Rational> lower,
                             std::optional<Rational> upper) {
  const ExprVar v = impl_->vars.add(name, sort, std::move(lower),
                                    std::move(upper));
  impl_->registerNewVars();
  return v;
}

const VarTable& SolverState::vars() const { return impl_->vars; }

void SolverState::assertExpr(const Expr& e) {
  impl_->requireDeclared(e);
  impl_->assertions.push_back(e);
  impl_->absorb(e);
}

const std::vector<Expr>& SolverState::assertions() const {
  return impl_->assertions;
}

CheckResult SolverState::checkAssuming(const std::vector<Expr>& assumptions) {
  return impl_->run(assumptions, nullptr);
}

CheckResult SolverState::minimize(const std::vector<LinearTerm>& objective,
                                  const std::vector<Expr>& assumptions) {
  return impl_->run(assumptions, &objective);
}

std::string SolverState::exportSmt2(const std::vector<Expr>& assumptions) const {
  const Impl& s = *impl_;
  std::ostringstream out;
  bool anyInt = false, anyReal = false;
  for (ExprVar v = 0; v < s.vars.size(); ++v) {
    if (s.hidden.count(v)) continue;
    anyInt |= s.vars[v].sort == Sort::Int;
    anyReal |= s.vars[v].sort == Sort::Real;
  }
  const char* logic = anyInt && anyReal ? "QF_LIRA" : anyReal ? "QF_LRA" : "QF_LIA";
  out << "(set-logic " << logic << ")\n";
  for (ExprVar v = 0; v < s.vars.size(); ++v) {
    if (s.hidden.count(v)) continue;
    const VarInfo& info = s.vars[v];
    const char* sort = info.sort == Sort::Bool  ? "Bool"
                       : info.sort == Sort::Int ? "Int"
                                                : "Real";
    out << "(declare-fun " << smtSymbol(info.name) << " () " << sort << ")\n";
    if (info.sort == Sort::Bool) continue;
    if (info.lower) {
      out << "(assert " << toSmtLib(mkLinRel({{v, Rational(1)}}, RelOp::Ge, *info.lower), s.vars)
          << ")\n";
    }
    if (info.upper) {
      out << "(assert " << toSmtLib(mkLinRel({{v, Rational(1)}}, RelOp::Le, *info.upper), s.vars)
          << ")\n";
    }
  }
  for (const auto& e : s.assertions) {
    out << "(assert " << toSmtLib(e, s.vars) << ")\n";
  }
  if (assumptions.empty()) {
    out << "(check-sat)\n";
  } else {
    out << "(push 1)\n";
    for (const auto& a : assumptions) {
      out << "(assert " << toSmtLib(a, s.vars) << ")\n";
    }
    out << "(check-sat)\n(pop 1)\n";
  }
  return out.str();
}

MilpConstraintSet SolverState::translation(TranslationMode mode) const {
  const Impl& s = *impl_;
  if (mode == TranslationMode::Indicator) {
    MilpConstraintSet out = s.cache;
    appendMilp(out, PgResult{}, s.vars, mode);
    return out;
  }
  MilpConstraintSet out;
  for (const auto& pg : s.pgs) appendMilp(out, pg, s.vars, mode);
  appendMilp(out, PgResult{}, s.vars, mode);
  return out;
}

std::string SolverState::exportLp() const {
  return writeCplexLp(translation(TranslationMode::BigM).toLinProgram());
}

const SolverStats& SolverState::stats() const { return impl_->stats; }

void SolverState::setWarmStart(bool on) { impl_->opts.warmStart = on; }

}  // namespace petriplan
