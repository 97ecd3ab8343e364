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

#include "petriplan/reach.hpp"

#include <algorithm>

#include "petriplan/encode.hpp"

namespace petriplan {

namespace {

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

// One transition layer over template variables: place p before the layer
// is variable p, after it P + p, and transition t fires as 2P + t.
class Layer {
 public:
  Layer(const Problem& p, const PetriNet& net) : p_(p), net_(net) {
    const auto P = static_cast<ExprVar>(net.placeCount());
    for (VarId v = 0; v < P; ++v) {
      const Interval& b = net.bounds[v];
      vars_.add("pre:" + net.places[v].name, sortOf(net.places[v].kind), b.lo,
                b.hi);
    }
    for (VarId v = 0; v < P; ++v) {
      const Interval& b = net.bounds[v];
      vars_.add("post:" + net.places[v].name, sortOf(net.places[v].kind), b.lo,
                b.hi);
    }
    for (ActionId t = 0; t < net.transitionCount(); ++t) {
      vars_.add("fire:" + net.transitions[t], Sort::Bool);
    }
    for (ActionId t = 0; t < net.transitionCount(); ++t) {
      std::vector<Expr> pre;
      for (const auto& c : net.pre[t]) pre.push_back(at(c, false));
      for (const auto& r : boundPreconditions(net, t)) pre.push_back(at(r, false));
      enable_.push_back(mkAnd(std::move(pre)));
      std::vector<Expr> post;
      for (const auto& arc : net.arcs) {
        if (arc.transition != t || !net.isBoolean(arc.place)) continue;
        post.push_back(mkLit(P + arc.place, arc.polarity));
      }
      arrive_.push_back(mkAnd(std::move(post)));
    }
    for (VarId v = 0; v < P; ++v) {
      if (!net.isBoolean(v)) {
        persist_.push_back(mkTrue());
        continue;
      }
      std::vector<Expr> setTrue, setFalse, link;
      for (const auto& arc : net.arcs) {
        if (arc.place != v || arc.kind == ArcKind::PreOnly) continue;
        const Expr tau = mkVar(fire(arc.transition));
        (arc.polarity ? setTrue : setFalse).push_back(tau);
        link.push_back(mkImplies(
            tau, mkAnd(enable_[arc.transition], arrive_[arc.transition])));
      }
      const Expr before = mkVar(v);
      const Expr after = mkVar(P + v);
      std::vector<Expr> parts{
          mkOr(mkAnd(before, mkNot(after)), mkAnd(mkNot(before), after)),
          mkImplies(mkAnd(mkNot(before), after), mkOr(std::move(setTrue))),
          mkImplies(mkAnd(before, mkNot(after)), mkOr(std::move(setFalse)))};
      parts.insert(parts.end(), link.begin(), link.end());
      persist_.push_back(mkAnd(std::move(parts)));
    }
  }

  ExprVar pre(VarId v) const { return v; }
  ExprVar post(VarId v) const {
    return static_cast<ExprVar>(net_.placeCount() + v);
  }
  ExprVar fire(ActionId t) const {
    return static_cast<ExprVar>(2 * net_.placeCount() + t);
  }

  Expr at(const Condition& c, bool after) const {
    const VarId shift = after ? static_cast<VarId>(net_.placeCount()) : 0;
    if (const auto* lit = std::get_if<BoolLiteral>(&c)) {
      return mkLit(lit->var + shift, lit->polarity);
    }
    const auto& rel = std::get<LinearRelation>(c);
    std::vector<LinearTerm> terms;
    for (const auto& t : rel.terms) terms.push_back({t.var + shift, t.coeff});
    return mkLinRel(std::move(terms), rel.op, rel.rhs);
  }

  Expr conj(const std::vector<Condition>& cs, bool after) const {
    std::vector<Expr> parts;
    for (const auto& c : cs) parts.push_back(at(c, after));
    return mkAnd(std::move(parts));
  }

  // Binds either side of the layer from a step's sets.
  void bind(const StepSets& s, bool after, BindingSet& b,
            std::vector<Interval>& boxes) const {
    for (const auto& [v, value] : s.bindings) b[after ? post(v) : pre(v)] = value;
    for (VarId v = 0; v < s.intervals.size(); ++v) {
      boxes[after ? post(v) : pre(v)] = s.intervals[v];
    }
  }

  std::vector<Interval> freshBoxes() const {
    return std::vector<Interval>(vars_.size());
  }

  const VarTable& vars() const { return vars_; }
  const Expr& enable(ActionId t) const { return enable_[t]; }
  const Expr& arrive(ActionId t) const { return arrive_[t]; }
  const Expr& persist(VarId v) const { return persist_[v]; }
  const Problem& problem() const { return p_; }

 private:
  const Problem& p_;
  const PetriNet& net_;
  VarTable vars_;
  std::vector<Expr> enable_;
  std::vector<Expr> arrive_;
  std::vector<Expr> persist_;
};

bool anyEmpty(const StepSets& s) {
  return std::any_of(s.intervals.begin(), s.intervals.end(),
                     [](const Interval& iv) { return iv.empty(); });
}

// Shifts an interval by the sum of the enabled deltas in both directions.
Interval spread(const Interval& cur, const Rational& down, const Rational& up) {
  Interval moved = cur;
  if (moved.lo) *moved.lo += down;
  if (moved.hi) *moved.hi += up;
  return cur.hull(moved);
}

void bindPoints(const PetriNet& net, StepSets& s) {
  for (VarId v = 0; v < net.placeCount(); ++v) {
    if (!net.isBoolean(v) && s.intervals[v].isPoint()) {
      s.bindings[v] = *s.intervals[v].lo;
    }
  }
}

StepSets trivialSets(const PetriNet& net) {
  StepSets s;
  s.intervals = net.bounds;
  s.disabled.assign(net.transitionCount(), false);
  return s;
}

Interval constraintBox(const Problem& p, VarId v) {
  Interval out;
  for (const auto& c : p.constraints) {
    if (const auto* rel = std::get_if<LinearRelation>(&c)) {
      out = out.intersect(impliedInterval(*rel, v));
    }
  }
  return out;
}

void disableForward(const Layer& layer, const PetriNet& net, StepSets& s,
                    int k) {
  s.disabled.assign(net.transitionCount(), false);
  if (anyEmpty(s)) {
    s.disabled.assign(net.transitionCount(), true);
    return;
  }
  BindingSet b;
  auto boxes = layer.freshBoxes();
  layer.bind(s, false, b, boxes);
  const Expr inv =
      k >= 1 ? layer.conj(layer.problem().constraints, false) : mkTrue();
  for (ActionId t = 0; t < net.transitionCount(); ++t) {
    const Expr e = pval(mkAnd(layer.enable(t), inv), b);
    s.disabled[t] = psat(e, layer.vars(), &boxes) == PsatResult::Unsat;
  }
}

}  // namespace

ReachableSets propagateForward(const Problem& p, const PetriNet& net,
                               int maxSteps) {
  const Layer layer(p, net);
  ReachableSets out;
  out.direction = Direction::Forward;

  StepSets s0;
  for (VarId v = 0; v < net.placeCount(); ++v) {
    s0.bindings[v] = net.initMarking[v];
    s0.intervals.push_back(Interval::point(net.initMarking[v]));
  }
  disableForward(layer, net, s0, 0);
  out.perStep.push_back(std::move(s0));

  for (int k = 0;; ++k) {
    const StepSets& cur = out.perStep.back();
    StepSets next;
    BindingSet b;
    auto boxes = layer.freshBoxes();
    layer.bind(cur, false, b, boxes);
    for (ActionId t = 0; t < net.transitionCount(); ++t) {
      if (cur.disabled[t]) b[layer.fire(t)] = 0;
    }
    next.intervals.resize(net.placeCount());
    for (VarId v = 0; v < net.placeCount(); ++v) {
      const Interval cbox = constraintBox(p, v);
      if (net.isBoolean(v)) {
        auto it = cur.bindings.find(v);
        bool fixed = false;
        if (it != cur.bindings.end()) {
          BindingSet bv = b;
          const Expr e = pval(layer.persist(v), bv);
          fixed = psat(e, layer.vars(), &boxes) == PsatResult::Unsat;
        }
        Interval iv = fixed ? Interval::point(it->second) : net.bounds[v];
        iv = iv.intersect(cbox);
        next.intervals[v] = iv;
        if (iv.isPoint()) next.bindings[v] = *iv.lo;
        continue;
      }
      Rational down = 0, up = 0;
      for (ActionId t = 0; t < net.transitionCount(); ++t) {
        if (cur.disabled[t]) continue;
        const Rational w = net.incidence.at(v, t);
        (w < 0 ? down : up) += w;
      }
      next.intervals[v] = spread(cur.intervals[v], down, up)
                              .intersect(net.bounds[v])
                              .intersect(cbox);
    }
    for (const auto& c : p.constraints) {
      const auto* lit = std::get_if<BoolLiteral>(&c);
      if (!lit) continue;
      const Rational val(lit->polarity ? 1 : 0);
      next.intervals[lit->var] =
          next.intervals[lit->var].intersect(Interval::point(val));
      if (next.intervals[lit->var].isPoint()) {
        next.bindings[lit->var] = val;
      }
    }
    bindPoints(net, next);
    disableForward(layer, net, next, k + 1);

    if (k >= 1 && next == cur) {
      out.fixpointStep = k;
      return out;
    }
    if (static_cast<int>(out.perStep.size()) > maxSteps) {
      out.perStep.push_back(trivialSets(net));
      out.capped = true;
      out.fixpointStep = static_cast<int>(out.perStep.size()) - 1;
      return out;
    }
    out.perStep.push_back(std::move(next));
  }
}

ReachableSets propagateBackward(const Problem& p, const PetriNet& net,
                                const std::vector<Condition>& goal,
                                int maxSteps) {
  const Layer layer(p, net);
  ReachableSets out;
  out.direction = Direction::Backward;

  auto disable = [&](StepSets& s) {
    s.disabled.assign(net.transitionCount(), false);
    if (anyEmpty(s)) {
      s.disabled.assign(net.transitionCount(), true);
      return;
    }
    BindingSet b;
    auto boxes = layer.freshBoxes();
    layer.bind(s, true, b, boxes);
    for (ActionId t = 0; t < net.transitionCount(); ++t) {
      const Expr e = pval(layer.arrive(t), b);
      s.disabled[t] = psat(e, layer.vars(), &boxes) == PsatResult::Unsat;
    }
  };

  StepSets s0;
  s0.intervals = net.bounds;
  for (const auto& c : goal) {
    if (const auto* lit = std::get_if<BoolLiteral>(&c)) {
      s0.intervals[lit->var] = s0.intervals[lit->var].intersect(
          Interval::point(Rational(lit->polarity ? 1 : 0)));
      continue;
    }
    const auto& rel = std::get<LinearRelation>(c);
    if (rel.terms.size() == 1) {
      const VarId v = rel.terms[0].var;
      s0.intervals[v] = s0.intervals[v].intersect(impliedInterval(rel, v));
    }
  }
  for (VarId v = 0; v < net.placeCount(); ++v) {
    if (net.isBoolean(v) && s0.intervals[v].isPoint()) {
      s0.bindings[v] = *s0.intervals[v].lo;
    }
  }
  bindPoints(net, s0);
  disable(s0);
  out.perStep.push_back(std::move(s0));

  for (;;) {
    const StepSets& cur = out.perStep.back();
    StepSets next;
    BindingSet b;
    auto boxes = layer.freshBoxes();
    layer.bind(cur, true, b, boxes);
    for (ActionId t = 0; t < net.transitionCount(); ++t) {
      if (cur.disabled[t]) b[layer.fire(t)] = 0;
    }
    next.intervals.resize(net.placeCount());
    for (VarId v = 0; v < net.placeCount(); ++v) {
      if (net.isBoolean(v)) {
        auto it = cur.bindings.find(v);
        bool fixed = false;
        if (it != cur.bindings.end()) {
          const Expr e = pval(layer.persist(v), b);
          fixed = psat(e, layer.vars(), &boxes) == PsatResult::Unsat;
        }
        next.intervals[v] = fixed ? Interval::point(it->second) : net.bounds[v];
        if (fixed) next.bindings[v] = it->second;
        continue;
      }
      Rational down = 0, up = 0;
      for (ActionId t = 0; t < net.transitionCount(); ++t) {
        if (cur.disabled[t]) continue;
        const Rational w = net.incidence.at(v, t);
        // Undoing a firing moves the value against its delta.
        (w > 0 ? down : up) -= w;
      }
      next.intervals[v] =
          spread(cur.intervals[v], down, up).intersect(net.bounds[v]);
    }
    bindPoints(net, next);
    disable(next);

    if (next == cur) {
      out.fixpointStep = static_cast<int>(out.perStep.size()) - 1;
      return out;
    }
    if (static_cast<int>(out.perStep.size()) > maxSteps) {
      out.perStep.push_back(trivialSets(net));
      out.capped = true;
      out.fixpointStep = static_cast<int>(out.perStep.size()) - 1;
      return out;
    }
    out.perStep.push_back(std::move(next));
  }
}

ReachableSets propagate(const Problem& p, const PetriNet& net, Direction dir,
                        int maxSteps) {
  return dir == Direction::Forward ? propagateForward(p, net, maxSteps)
                                   : propagateBackward(p, net, p.goal, maxSteps);
}

BindingSet constants(const ReachableSets& fwd) {
  if (fwd.perStep.empty()) return {};
  BindingSet out = fwd.perStep.front().bindings;
  for (const auto& s : fwd.perStep) {
    for (auto it = out.begin(); it != out.end();) {
      auto jt = s.bindings.find(it->first);
      if (jt == s.bindings.end() || jt->second != it->second) {
        it = out.erase(it);
      } else {
        ++it;
      }
    }
  }
  return out;
}

bool goalConsistent(const StepSets& sets, const Problem& p,
                    const PetriNet& net, int k) {
  if (anyEmpty(sets)) return false;
  const Layer layer(p, net);
  BindingSet b;
  auto boxes = layer.freshBoxes();
  layer.bind(sets, false, b, boxes);
  Expr e = layer.conj(p.goal, false);
  if (k >= 1) e = mkAnd(e, layer.conj(p.constraints, false));
  return psat(pval(e, b), layer.vars(), &boxes) != PsatResult::Unsat;
}

int horizonLowerBound(const ReachableSets& fwd, const ReachableSets& bwd,
                      const Problem& p, const PetriNet& net, int cap) {
  int kf = cap;
  const int fEnd = std::min(cap, static_cast<int>(fwd.perStep.size()) - 1);
  for (int k = 0; k <= fEnd; ++k) {
    if (goalConsistent(fwd.at(k), p, net, k)) {
      kf = k;
      break;
    }
  }
  int kb = cap;
  const int bEnd = std::min(cap, static_cast<int>(bwd.perStep.size()) - 1);
  for (int d = 0; d <= bEnd; ++d) {
    const StepSets& s = bwd.at(d);
    bool ok = !anyEmpty(s);
    for (const auto& [v, value] : s.bindings) ok = ok && p.init[v] == value;
    for (VarId v = 0; ok && v < s.intervals.size(); ++v) {
      ok = s.intervals[v].contains(p.init[v]);
    }
    if (ok) {
      kb = d;
      break;
    }
  }
  return std::min(cap, std::max(kf, kb));
}

}  // namespace petriplan
