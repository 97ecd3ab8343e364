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

#include "petriplan/petri.hpp"

#include <algorithm>
#include <map>

namespace petriplan {

Rational SparseMatrix::at(VarId place, ActionId transition) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), std::make_pair(transition, place),
      [](const IncidenceEntry& e, const std::pair<ActionId, VarId>& key) {
        return std::make_pair(e.transition, e.place) < key;
      });
  if (it != entries.end() && it->transition == transition &&
      it->place == place) {
    return it->value;
  }
  return 0;
}

Interval impliedInterval(const LinearRelation& rel, VarId v) {
  if (rel.terms.size() != 1 || rel.terms[0].var != v) return {};
  const Rational& a = rel.terms[0].coeff;
  const Rational bound = rel.rhs / a;
  Interval out;
  const bool upper = (rel.op == RelOp::Le) == (a > 0);
  if (rel.op == RelOp::Eq) return Interval::point(bound);
  if (upper) {
    out.hi = bound;
  } else {
    out.lo = bound;
  }
  return out;
}

PetriNet buildPetri(const Problem& p) {
  PetriNet net;
  net.places = p.vars;
  net.initMarking = p.init;
  net.goalMarking = p.goal;
  net.rebindToTrue.assign(p.vars.size(), false);
  net.rebindToFalse.assign(p.vars.size(), false);
  for (const auto& v : p.vars) {
    if (v.kind == VarKind::Boolean) {
      net.bounds.push_back({Rational(0), Rational(1)});
    } else {
      net.bounds.push_back({v.lower, v.upper});
    }
  }

  for (ActionId t = 0; t < p.actions.size(); ++t) {
    const Action& act = p.actions[t];
    net.transitions.push_back(act.name);
    net.pre.push_back(act.pre);
    net.eff.push_back(act.eff);

    std::map<VarId, bool> boolPre;
    for (std::size_t i = 0; i < act.pre.size(); ++i) {
      if (const auto* lit = std::get_if<BoolLiteral>(&act.pre[i])) {
        boolPre[lit->var] = lit->polarity;
        continue;
      }
      for (const auto& term : std::get<LinearRelation>(act.pre[i]).terms) {
        net.arcs.push_back(
            {term.var, t, ArcKind::PreOnly, true, term.coeff, i});
      }
    }
    std::map<VarId, bool> boolEff;
    for (const auto& e : act.eff) {
      if (const auto* b = std::get_if<BoolAssign>(&e)) {
        boolEff[b->var] = b->value;
      } else {
        const auto& d = std::get<NumDelta>(e);
        net.arcs.push_back({d.var, t, ArcKind::EffOnly, true, d.delta, {}});
        net.incidence.entries.push_back({d.var, t, d.delta});
      }
    }
    for (const auto& [v, pol] : boolPre) {
      auto it = boolEff.find(v);
      if (it == boolEff.end() || it->second == pol) {
        // A write of the value already required changes nothing.
        net.arcs.push_back(
            {v, t, ArcKind::PreOnly, pol, Rational(pol ? 1 : -1), {}});
      } else {
        const Rational w = it->second ? 1 : -1;
        net.arcs.push_back({v, t, ArcKind::PreAndEff, it->second, w, {}});
        net.incidence.entries.push_back({v, t, w});
      }
    }
    for (const auto& [v, value] : boolEff) {
      if (boolPre.count(v)) continue;
      const Rational w = value ? 1 : -1;
      net.arcs.push_back({v, t, ArcKind::EffOnly, value, w, {}});
      net.incidence.entries.push_back({v, t, w});
      (value ? net.rebindToTrue : net.rebindToFalse)[v] = true;
    }
  }

  net.incidence.rows = p.vars.size();
  net.incidence.cols = p.actions.size();
  std::sort(net.incidence.entries.begin(), net.incidence.entries.end(),
            [](const IncidenceEntry& a, const IncidenceEntry& b) {
              return std::make_pair(a.transition, a.place) <
                     std::make_pair(b.transition, b.place);
            });
  std::sort(net.arcs.begin(), net.arcs.end(),
            [](const Arc& a, const Arc& b) {
              return std::make_pair(a.transition, a.place) <
                     std::make_pair(b.transition, b.place);
            });
  return net;
}

namespace {

// Largest lower (or smallest upper) bound on v among the preconditions.
std::optional<Rational> guardBound(const std::vector<Condition>& pre, VarId v,
                                   bool lower) {
  std::optional<Rational> best;
  for (const auto& c : pre) {
    const auto* rel = std::get_if<LinearRelation>(&c);
    if (!rel) continue;
    const Interval iv = impliedInterval(*rel, v);
    const auto& side = lower ? iv.lo : iv.hi;
    if (!side) continue;
    if (!best || (lower ? *side > *best : *side < *best)) best = side;
  }
  return best;
}

}  // namespace

PetriNet inferBounds(PetriNet net, const Problem& p) {
  for (const auto& var : p.vars) {
    if (var.kind == VarKind::Boolean) continue;
    const VarId v = var.id;
    const Rational& init = p.init[v];
    Interval inferred;
    bool lowerOk = true;
    bool upperOk = true;
    Rational lo = init;
    Rational hi = init;
    for (const auto& act : p.actions) {
      for (const auto& e : act.eff) {
        const auto* d = std::get_if<NumDelta>(&e);
        if (!d || d->var != v) continue;
        const bool decreasing = d->delta < 0;
        if (decreasing ? !lowerOk : !upperOk) continue;
        const auto guard = guardBound(act.pre, v, decreasing);
        if (!guard) {
          (decreasing ? lowerOk : upperOk) = false;
          continue;
        }
        const Rational reach = *guard + d->delta;
        if (decreasing && reach < lo) lo = reach;
        if (!decreasing && reach > hi) hi = reach;
      }
    }
    if (lowerOk) inferred.lo = lo;
    if (upperOk) inferred.hi = hi;
    if (var.kind == VarKind::Integer) {
      if (inferred.lo) inferred.lo = ceilOf(*inferred.lo);
      if (inferred.hi) inferred.hi = floorOf(*inferred.hi);
    }
    net.bounds[v] = net.bounds[v].intersect(inferred);
  }
  return net;
}

const SparseMatrix& incidenceMatrix(const PetriNet& net) {
  return net.incidence;
}

}  // namespace petriplan
