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


#include "petriplan/session.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "petriplan/report.hpp"

namespace petriplan {

namespace {

using json::Json;
using json::OrderedJson;

std::string diagnosticsText(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "; ";
    out += d.path + ": " + d.message;
  }
  return out;
}

OrderedJson conditionsToJson(const Problem& p,
                             const std::vector<Condition>& conds) {
  OrderedJson out = OrderedJson::array();
  for (const auto& c : conds) out.push_back(json::conditionToJson(p, c));
  return out;
}

std::vector<Condition> conditionsFromJson(const Problem& p, const Json& node,
                                          const std::string& path) {
  if (!node.is_array()) throw UpdateError(path + ": expected an array");
  std::vector<Condition> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    // Action names are not state variables; say so plainly.
    std::vector<Json> names;
    if (node[i].contains("lit") && node[i]["lit"].is_array() &&
        !node[i]["lit"].empty()) {
      names.push_back(node[i]["lit"][0]);
    }
    if (node[i].contains("rel") && node[i]["rel"].contains("terms")) {
      for (const auto& term : node[i]["rel"]["terms"]) {
        if (term.is_array() && term.size() == 2) names.push_back(term[1]);
      }
    }
    for (const auto& name : names) {
      if (name.is_string() && p.findAction(name.get<std::string>())) {
        throw UpdateError(at + ": '" + name.get<std::string>() +
                          "' is an action, not a state variable");
      }
    }
    out.push_back(json::conditionFromJson(p, node[i], at));
  }
  return out;
}

std::string relaxationName(GoalStatus s) {
  return s == GoalStatus::Infeasible ? "infeasible" : "possibly_feasible";
}

}  // namespace

Problem compose(const Problem& p, const Update& u) {
  Problem next = p;
  if (const auto* g = std::get_if<GoalChange>(&u)) {
    std::set<std::size_t> del;
    for (auto i : g->del) {
      if (i >= p.goal.size()) {
        throw UpdateError("goal index " + std::to_string(i) +
                          " out of range (goal has " +
                          std::to_string(p.goal.size()) + " conditions)");
      }
      if (!del.insert(i).second) {
        throw UpdateError("goal index " + std::to_string(i) +
                          " deleted twice");
      }
    }
    for (auto it = del.rbegin(); it != del.rend(); ++it) {
      next.goal.erase(next.goal.begin() + static_cast<std::ptrdiff_t>(*it));
    }
    next.goal.insert(next.goal.end(), g->add.begin(), g->add.end());
  } else {
    const auto& extra = std::get<AddConstraints>(u).constraints;
    next.constraints.insert(next.constraints.end(), extra.begin(),
                            extra.end());
  }
  // Out-of-range ids would crash the checks below, so test them first.
  auto inRange = [&](const Condition& c) {
    for (auto v : conditionVars(c)) {
      if (v >= p.vars.size()) return false;
    }
    return true;
  };
  for (const auto& c : next.goal) {
    if (!inRange(c)) throw UpdateError("condition names an unknown variable");
  }
  for (const auto& c : next.constraints) {
    if (!inRange(c)) throw UpdateError("condition names an unknown variable");
  }
  const auto diags = validateProblem(next);
  if (!diags.empty()) throw UpdateError(diagnosticsText(diags));
  return next;
}

OrderedJson updateToJson(const Problem& p, const Update& u) {
  OrderedJson j;
  if (const auto* g = std::get_if<GoalChange>(&u)) {
    OrderedJson body;
    body["del"] = g->del;
    body["add"] = conditionsToJson(p, g->add);
    j["goal_change"] = std::move(body);
  } else {
    j["add_constraints"] =
        conditionsToJson(p, std::get<AddConstraints>(u).constraints);
  }
  return j;
}

Update updateFromJson(const Problem& p, const Json& node) {
  try {
    if (!node.is_object() || node.size() != 1) {
      throw UpdateError(
          "update must be {\"goal_change\": {..}} or {\"add_constraints\": "
          "[..]}");
    }
    if (node.contains("add_constraints")) {
      return AddConstraints{conditionsFromJson(p, node.at("add_constraints"),
                                               "add_constraints")};
    }
    if (!node.contains("goal_change")) {
      throw UpdateError("unknown update kind '" + node.begin().key() +
                        "'");
    }
    const Json& body = node.at("goal_change");
    if (!body.is_object()) throw UpdateError("goal_change: expected an object");
    for (const auto& [key, value] : body.items()) {
      if (key != "add" && key != "del") {
        throw UpdateError("goal_change: unknown key '" + key + "'");
      }
    }
    GoalChange g;
    if (body.contains("add")) {
      g.add = conditionsFromJson(p, body.at("add"), "goal_change.add");
    }
    if (body.contains("del")) {
      const Json& del = body.at("del");
      if (!del.is_array()) throw UpdateError("goal_change.del: expected an array");
      for (const auto& i : del) {
        if (!i.is_number_unsigned()) {
          throw UpdateError("goal_change.del: indices must be non-negative "
                            "integers");
        }
        g.del.push_back(i.get<std::size_t>());
      }
    }
    return g;
  } catch (const ParseError& e) {
    throw UpdateError(e.path() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw UpdateError(diagnosticsText(e.diagnostics()));
  } catch (const Json::exception& e) {
    throw UpdateError(e.what());
  }
}

std::vector<Update> genUpdateSequence(const Problem& base, std::uint64_t seed,
                                      int count) {
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::uint64_t n) {
    return static_cast<std::int64_t>(rng() % n);
  };
  // Delivery-shaped problems get package destination goals and forbidden
  // truck positions; anything else draws from all Boolean variables.
  auto prefixed = [&](std::string_view prefix, bool offOnly) {
    std::vector<VarId> out;
    for (const auto& v : base.vars) {
      if (v.kind == VarKind::Boolean && v.name.starts_with(prefix) &&
          (!offOnly || base.init[v.id] == 0)) {
        out.push_back(v.id);
      }
    }
    return out;
  };
  std::vector<VarId> boolVars = prefixed("pkg_at_", false);
  if (boolVars.empty()) boolVars = prefixed("", false);
  std::vector<VarId> offVars = prefixed("truck_at_", true);
  if (offVars.empty()) offVars = prefixed("", true);
  std::vector<VarId> numVars;
  for (const auto& v : base.vars) {
    if (v.kind != VarKind::Boolean && v.lower && v.upper) {
      numVars.push_back(v.id);
    }
  }
  auto numericBound = [&](VarId v, bool inRange) {
    const auto& var = base.vars[v];
    const Rational lo = *var.lower;
    const Rational hi = inRange ? *var.upper : *var.upper + 1;
    const auto span = static_cast<std::uint64_t>(
        Rational(hi - lo).get_num().get_si() + 1);
    return Rational(lo + uniform(std::max<std::uint64_t>(span, 1)));
  };

  std::vector<Update> out;
  std::vector<Condition> goal = base.goal;
  for (int i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      GoalChange g;
      if (!boolVars.empty()) {
        if (!goal.empty() && (goal.size() >= 2 || uniform(3) == 0)) {
          g.del.push_back(static_cast<std::size_t>(uniform(goal.size())));
        }
        const VarId v =
            boolVars[static_cast<std::size_t>(uniform(boolVars.size()))];
        g.add.push_back(BoolLiteral{v, true});
      } else if (!numVars.empty()) {
        // A new target for a counter replaces its old one; one in six
        // targets lies past the upper bound.
        const VarId v =
            numVars[static_cast<std::size_t>(uniform(numVars.size()))];
        for (std::size_t k = 0; k < goal.size(); ++k) {
          const auto vars = conditionVars(goal[k]);
          if (std::find(vars.begin(), vars.end(), v) != vars.end()) {
            g.del.push_back(k);
          }
        }
        g.add.push_back(LinearRelation{{{v, 1}}, RelOp::Eq,
                                       numericBound(v, uniform(6) != 0)});
      }
      for (auto it = g.del.rbegin(); it != g.del.rend(); ++it) {
        goal.erase(goal.begin() + static_cast<std::ptrdiff_t>(*it));
      }
      goal.insert(goal.end(), g.add.begin(), g.add.end());
      out.push_back(std::move(g));
    } else {
      AddConstraints c;
      const bool numeric =
          !numVars.empty() && (offVars.empty() || uniform(2) == 0);
      if (numeric) {
        const VarId v =
            numVars[static_cast<std::size_t>(uniform(numVars.size()))];
        // Upper half of the range, never below the initial value.
        const auto& var = base.vars[v];
        const Rational mid = ceilOf(Rational((*var.lower + *var.upper) / 2));
        const auto span =
            static_cast<std::uint64_t>(Rational(*var.upper - mid).get_num().get_si());
        Rational u = mid + uniform(span + 1);
        if (u < base.init[v]) u = base.init[v];
        c.constraints.push_back(LinearRelation{{{v, 1}}, RelOp::Le, u});
      } else if (!offVars.empty()) {
        const VarId v =
            offVars[static_cast<std::size_t>(uniform(offVars.size()))];
        c.constraints.push_back(BoolLiteral{v, false});
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

Session::Session(std::string id, Problem p0, SessionOptions opts)
    : id_(std::move(id)), problem_(std::move(p0)), opts_(std::move(opts)) {
  const auto diags = validateProblem(problem_);
  if (!diags.empty()) throw ValidationError(diags);
  analysis_ = std::make_unique<Analysis>(
      analyzeProblem(problem_, opts_.planner.threads, false));
  search_ = std::make_unique<PlanSearch>(*analysis_, problem_.constraints,
                                         opts_.planner.solver);
  if (!opts_.journalPath.empty()) {
    std::ofstream(opts_.journalPath, std::ios::trunc);
  }
  OrderedJson rec;
  rec["round"] = 0;
  rec["kind"] = "create";
  rec["id"] = id_;
  OrderedJson options;
  options["max_horizon"] = opts_.planner.maxHorizon;
  options["node_limit"] = opts_.planner.solver.nodeLimit;
  rec["options"] = std::move(options);
  rec["problem"] = json::problemToJson(problem_);
  record(std::move(rec));
}

GoalStatus Session::apply(const Update& u) {
  Problem next = compose(problem_, u);
  if (std::holds_alternative<GoalChange>(u)) {
    // Net, relaxation template, invariants and forward sets stay; the solver
    // is untouched because goals only ever appear as assumptions.
    reanalyzeGoal(*analysis_, next);
  } else {
    auto fresh = std::make_unique<Analysis>(
        analyzeProblem(next, opts_.planner.threads, false));
    SolverState& st = search_->solver();
    HorizonEncoder& enc = search_->encoder();
    enc.addConstraints(st, std::get<AddConstraints>(u).constraints);
    enc.addInvariants(st, fresh->invariants);
    enc.refineForward(st, fresh->forward);
    analysis_ = std::move(fresh);
  }
  problem_ = std::move(next);
  ++round_;
  OrderedJson rec;
  rec["round"] = round_;
  rec["kind"] = "update";
  rec["update"] = updateToJson(problem_, u);
  rec["relaxation"] = relaxationName(analysis_->goalStatus);
  record(std::move(rec));
  return analysis_->goalStatus;
}

PlanOutcome Session::solve() {
  PlanOutcome o = search_->run(problem_, *analysis_, opts_.planner);
  last_ = o;
  OrderedJson rec;
  rec["round"] = round_;
  rec["kind"] = "solve";
  rec["outcome"] = json::outcomeDigest(problem_, o);
  record(std::move(rec));
  return o;
}

void Session::record(OrderedJson rec) {
  journal_.push_back(rec.dump());
  if (opts_.journalPath.empty()) return;
  std::ofstream out(opts_.journalPath, std::ios::app);
  out << journal_.back() << '\n';
  if (!out) {
    throw std::runtime_error("cannot append to journal " + opts_.journalPath);
  }
}

std::string Session::journalText() const {
  std::string out;
  for (const auto& line : journal_) {
    out += line;
    out += '\n';
  }
  return out;
}

OrderedJson Session::digest() const {
  OrderedJson j;
  j["id"] = id_;
  j["round"] = round_;
  j["problem"] = json::problemToJson(problem_);
  j["last_outcome"] =
      last_ ? json::outcomeDigest(problem_, *last_) : OrderedJson(nullptr);
  return j;
}

OrderedJson Session::state() const {
  OrderedJson j;
  j["id"] = id_;
  j["round"] = round_;
  OrderedJson goal = OrderedJson::array();
  for (std::size_t i = 0; i < problem_.goal.size(); ++i) {
    OrderedJson g;
    g["index"] = i;
    g["condition"] = json::conditionToJson(problem_, problem_.goal[i]);
    g["text"] = describeCondition(problem_, problem_.goal[i]);
    goal.push_back(std::move(g));
  }
  j["goal"] = std::move(goal);
  j["constraints"] = conditionsToJson(problem_, problem_.constraints);
  j["invariants"] = json::invariantsToJson(problem_, analysis_->invariants);
  j["relaxation"] = relaxationName(analysis_->goalStatus);
  j["lower_bound"] = analysis_->lowerBound;
  j["last_outcome"] =
      last_ ? json::outcomeDigest(problem_, *last_) : OrderedJson(nullptr);
  j["explanations"] = last_ && last_->explanation
                          ? OrderedJson(last_->explanation->goalIndexSets)
                          : OrderedJson::array();
  return j;
}

std::unique_ptr<Session> Session::replay(const std::string& journalText,
                                         SessionOptions opts) {
  std::istringstream in(journalText);
  std::string line;
  std::unique_ptr<Session> s;
  const std::string path = opts.journalPath;
  opts.journalPath.clear();
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    const std::string where = "journal line " + std::to_string(lineNo);
    OrderedJson rec;
    try {
      rec = OrderedJson::parse(line);
    } catch (const OrderedJson::exception& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
    const std::string kind = rec.value("kind", "");
    if (!s) {
      if (kind != "create") {
        throw std::runtime_error(where + ": expected a create record");
      }
      if (rec.contains("options")) {
        const auto& o = rec.at("options");
        opts.planner.maxHorizon =
            o.value("max_horizon", opts.planner.maxHorizon);
        opts.planner.solver.nodeLimit =
            o.value("node_limit", opts.planner.solver.nodeLimit);
      }
      s = std::make_unique<Session>(rec.at("id").get<std::string>(),
                                    json::problemFromJson(rec.at("problem")),
                                    opts);
    } else if (kind == "update") {
      s->apply(updateFromJson(s->problem_, rec.at("update")));
    } else if (kind == "solve") {
      const PlanOutcome o = s->solve();
      if (json::outcomeDigest(s->problem_, o) != rec.at("outcome")) {
        throw std::runtime_error(where + ": re-run outcome differs");
      }
    } else {
      throw std::runtime_error(where + ": unknown record kind '" + kind + "'");
    }
    if (rec.value("round", -1) != s->round_) {
      throw std::runtime_error(where + ": round mismatch");
    }
  }
  if (!s) throw std::runtime_error("empty journal");
  s->opts_.journalPath = path;
  return s;
}

}  // namespace petriplan
