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

#include "petriplan/problem.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include "petriplan/problem_json.hpp"

namespace petriplan {

std::string_view varKindName(VarKind kind) {
  switch (kind) {
    case VarKind::Boolean:
      return "boolean";
    case VarKind::Integer:
      return "integer";
    case VarKind::Real:
      return "real";
  }
  return "?";
}

VarId effectVar(const Effect& effect) {
  return std::visit([](const auto& e) { return e.var; }, effect);
}

std::optional<VarId> Problem::findVar(std::string_view name) const {
  for (const auto& v : vars) {
    if (v.name == name) return v.id;
  }
  return std::nullopt;
}

std::optional<ActionId> Problem::findAction(std::string_view name) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].name == name) return static_cast<ActionId>(i);
  }
  return std::nullopt;
}

bool holds(const Condition& cond, const State& state) {
  if (const auto* lit = std::get_if<BoolLiteral>(&cond)) {
    return (state[lit->var] != 0) == lit->polarity;
  }
  const auto& rel = std::get<LinearRelation>(cond);
  Rational lhs = 0;
  for (const auto& t : rel.terms) lhs += t.coeff * state[t.var];
  return compare(lhs, rel.op, rel.rhs);
}

bool holdsAll(const std::vector<Condition>& conds, const State& state) {
  return std::all_of(conds.begin(), conds.end(),
                     [&](const Condition& c) { return holds(c, state); });
}

bool withinBounds(const Problem& p, const State& state) {
  for (const auto& v : p.vars) {
    const Rational& x = state[v.id];
    if (v.kind == VarKind::Boolean) {
      if (x != 0 && x != 1) return false;
      continue;
    }
    if (v.lower && x < *v.lower) return false;
    if (v.upper && x > *v.upper) return false;
  }
  return true;
}

std::vector<VarId> conditionVars(const Condition& cond) {
  if (const auto* lit = std::get_if<BoolLiteral>(&cond)) return {lit->var};
  std::vector<VarId> out;
  for (const auto& t : std::get<LinearRelation>(cond).terms) {
    out.push_back(t.var);
  }
  return out;
}

std::string describeCondition(const Problem& p, const Condition& cond) {
  auto name = [&](VarId v) {
    return v < p.vars.size() ? p.vars[v].name : "#" + std::to_string(v);
  };
  if (const auto* lit = std::get_if<BoolLiteral>(&cond)) {
    return (lit->polarity ? "" : "!") + name(lit->var);
  }
  const auto& rel = std::get<LinearRelation>(cond);
  std::string out;
  for (std::size_t i = 0; i < rel.terms.size(); ++i) {
    const auto& t = rel.terms[i];
    Rational c = t.coeff;
    if (i > 0) {
      out += c < 0 ? " - " : " + ";
      c = abs(c);
    } else if (c == -1) {
      out += "-";
      c = 1;
    }
    if (c != 1) out += formatRational(c) + "*";
    out += name(t.var);
  }
  out += " ";
  out += relOpSymbol(rel.op);
  out += " " + formatRational(rel.rhs);
  return out;
}

ParseError::ParseError(std::string path, const std::string& message)
    : std::runtime_error(path.empty() ? message : path + ": " + message),
      path_(std::move(path)) {}

namespace {

std::string joinDiagnostics(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += "; ";
    out += d.path + ": " + d.message;
  }
  return out;
}

class DiagnosticSink {
 public:
  explicit DiagnosticSink(const Problem& p) : p_(p) {}

  void add(std::string path, std::string message) {
    out_.push_back({std::move(path), std::move(message)});
  }

  bool knownVar(VarId v, const std::string& path) {
    if (v < p_.vars.size()) return true;
    add(path, "unknown variable id " + std::to_string(v));
    return false;
  }

  void condition(const Condition& cond, const std::string& path) {
    if (const auto* lit = std::get_if<BoolLiteral>(&cond)) {
      if (knownVar(lit->var, path) && !p_.isBoolean(lit->var)) {
        add(path, "literal on non-boolean variable '" +
                      p_.vars[lit->var].name + "'");
      }
      return;
    }
    const auto& rel = std::get<LinearRelation>(cond);
    if (rel.terms.empty()) add(path, "relation has no terms");
    std::set<VarId> seen;
    for (std::size_t i = 0; i < rel.terms.size(); ++i) {
      const auto& t = rel.terms[i];
      const std::string tp = path + ".terms[" + std::to_string(i) + "]";
      if (t.coeff == 0) add(tp, "zero coefficient");
      if (!knownVar(t.var, tp)) continue;
      if (p_.isBoolean(t.var)) {
        add(tp, "relation over boolean variable '" + p_.vars[t.var].name +
                    "'");
      }
      if (!seen.insert(t.var).second) {
        add(tp, "duplicate term for '" + p_.vars[t.var].name + "'");
      }
    }
  }

  std::vector<Diagnostic> take() { return std::move(out_); }

 private:
  const Problem& p_;
  std::vector<Diagnostic> out_;
};

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error("invalid problem: " + joinDiagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

std::vector<Diagnostic> validateProblem(const Problem& p) {
  DiagnosticSink sink(p);
  std::set<std::string> names;
  for (std::size_t i = 0; i < p.vars.size(); ++i) {
    const auto& v = p.vars[i];
    const std::string path = "vars[" + std::to_string(i) + "]";
    if (v.id != i) sink.add(path, "id is not dense");
    if (v.name.empty()) sink.add(path, "empty name");
    if (!names.insert(v.name).second) {
      sink.add(path, "duplicate variable name '" + v.name + "'");
    }
    if (v.kind == VarKind::Boolean && (v.lower || v.upper)) {
      sink.add(path, "boolean variable '" + v.name + "' has bounds");
    }
    if (v.lower && v.upper && *v.lower > *v.upper) {
      sink.add(path, "lower bound exceeds upper bound for '" + v.name + "'");
    }
  }

  std::set<std::string> actionNames;
  for (std::size_t a = 0; a < p.actions.size(); ++a) {
    const auto& act = p.actions[a];
    const std::string path = "actions[" + std::to_string(a) + "]";
    if (act.name.empty()) sink.add(path, "empty name");
    if (!actionNames.insert(act.name).second) {
      sink.add(path, "duplicate action name '" + act.name + "'");
    }
    for (std::size_t i = 0; i < act.pre.size(); ++i) {
      sink.condition(act.pre[i], path + ".pre[" + std::to_string(i) + "]");
    }
    std::set<VarId> touched;
    for (std::size_t i = 0; i < act.eff.size(); ++i) {
      const std::string ep = path + ".eff[" + std::to_string(i) + "]";
      const VarId v = effectVar(act.eff[i]);
      if (!sink.knownVar(v, ep)) continue;
      if (!touched.insert(v).second) {
        sink.add(ep, "duplicate effect on '" + p.vars[v].name + "' in '" +
                         act.name + "'");
      }
      if (const auto* d = std::get_if<NumDelta>(&act.eff[i])) {
        if (p.isBoolean(v)) {
          sink.add(ep, "numeric effect on boolean '" + p.vars[v].name + "'");
        }
        if (d->delta == 0) sink.add(ep, "zero delta");
      } else if (!p.isBoolean(v)) {
        sink.add(ep, "boolean effect on numeric '" + p.vars[v].name + "'");
      }
    }
  }

  if (p.init.size() != p.vars.size()) {
    sink.add("init", "expected " + std::to_string(p.vars.size()) +
                         " values, got " + std::to_string(p.init.size()));
  } else {
    for (const auto& v : p.vars) {
      const Rational& x = p.init[v.id];
      const std::string path = "init." + v.name;
      if (v.kind == VarKind::Boolean) {
        if (x != 0 && x != 1) sink.add(path, "boolean init not 0/1");
        continue;
      }
      if (v.kind == VarKind::Integer && !isIntegral(x)) {
        sink.add(path, "non-integral init for integer '" + v.name + "'");
      }
      if ((v.lower && x < *v.lower) || (v.upper && x > *v.upper)) {
        sink.add(path, "init value " + formatRational(x) + " of '" + v.name +
                           "' is out of bounds");
      }
    }
  }

  for (std::size_t i = 0; i < p.goal.size(); ++i) {
    sink.condition(p.goal[i], "goal[" + std::to_string(i) + "]");
  }
  for (std::size_t i = 0; i < p.constraints.size(); ++i) {
    sink.condition(p.constraints[i], "constraints[" + std::to_string(i) + "]");
  }
  return sink.take();
}

namespace json {

namespace {

void requireObject(const Json& node, const std::string& path,
                   std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional = {}) {
  if (!node.is_object()) throw ParseError(path, "expected an object");
  for (const auto& [key, value] : node.items()) {
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) throw ParseError(path, "unknown key '" + key + "'");
  }
  for (auto key : required) {
    if (!node.contains(std::string(key))) {
      throw ParseError(path, "missing key '" + std::string(key) + "'");
    }
  }
}

const Json& requireArray(const Json& node, const std::string& path) {
  if (!node.is_array()) throw ParseError(path, "expected an array");
  return node;
}

std::string requireString(const Json& node, const std::string& path) {
  if (!node.is_string()) throw ParseError(path, "expected a string");
  return node.get<std::string>();
}

VarId resolveVar(const Problem& p, const Json& node, const std::string& path) {
  const std::string name = requireString(node, path);
  if (auto id = p.findVar(name)) return *id;
  throw ValidationError({{path, "unknown variable '" + name + "'"}});
}

RelOp parseOp(const Json& node, const std::string& path) {
  const std::string op = requireString(node, path);
  if (op == "<=") return RelOp::Le;
  if (op == ">=") return RelOp::Ge;
  if (op == "=") return RelOp::Eq;
  throw ParseError(path, "operator must be one of <=, >=, = (got '" + op +
                             "')");
}

Effect effectFromJson(const Problem& p, const Json& node,
                      const std::string& path) {
  if (!node.is_object() || node.size() != 1) {
    throw ParseError(path, "effect must be {set:[..]} or {add:[..]}");
  }
  const std::string key = node.begin().key();
  const Json& body = node.begin().value();
  const std::string bp = path + "." + key;
  if (!body.is_array() || body.size() != 2) {
    throw ParseError(bp, "expected [variable, value]");
  }
  if (key == "set") {
    if (!body[1].is_boolean()) throw ParseError(bp + "[1]", "expected bool");
    return BoolAssign{resolveVar(p, body[0], bp + "[0]"), body[1].get<bool>()};
  }
  if (key == "add") {
    return NumDelta{resolveVar(p, body[0], bp + "[0]"),
                    rationalFromJson(body[1], bp + "[1]")};
  }
  throw ParseError(path, "unknown key '" + key + "'");
}

OrderedJson effectToJson(const Problem& p, const Effect& effect) {
  OrderedJson out = OrderedJson::object();
  if (const auto* b = std::get_if<BoolAssign>(&effect)) {
    out["set"] = OrderedJson::array({p.vars[b->var].name, b->value});
  } else {
    const auto& d = std::get<NumDelta>(effect);
    out["add"] =
        OrderedJson::array({p.vars[d.var].name, rationalToJson(d.delta)});
  }
  return out;
}

std::optional<Rational> optionalBound(const Json& node, const char* key,
                                      const std::string& path) {
  if (!node.contains(key)) return std::nullopt;
  return rationalFromJson(node.at(key), path + "." + key);
}

}  // namespace

OrderedJson rationalToJson(const Rational& value) {
  if (isIntegral(value) && mpz_fits_slong_p(value.get_num_mpz_t())) {
    return static_cast<std::int64_t>(mpz_get_si(value.get_num_mpz_t()));
  }
  return formatRational(value);
}

Rational rationalFromJson(const Json& node, const std::string& path) {
  if (node.is_number_integer()) {
    if (node.is_number_unsigned()) {
      return Rational(mpz_class(std::to_string(node.get<std::uint64_t>())));
    }
    return Rational(mpz_class(std::to_string(node.get<std::int64_t>())));
  }
  if (node.is_string()) {
    try {
      return parseRational(node.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(path, e.what());
    }
  }
  if (node.is_number_float()) {
    throw ParseError(path, "floating-point literal; write \"p/q\" instead");
  }
  throw ParseError(path, "expected an integer or \"p/q\" string");
}

OrderedJson conditionToJson(const Problem& p, const Condition& cond) {
  OrderedJson out = OrderedJson::object();
  if (const auto* lit = std::get_if<BoolLiteral>(&cond)) {
    out["lit"] = OrderedJson::array({p.vars[lit->var].name, lit->polarity});
    return out;
  }
  const auto& rel = std::get<LinearRelation>(cond);
  OrderedJson terms = OrderedJson::array();
  for (const auto& t : rel.terms) {
    terms.push_back(
        OrderedJson::array({rationalToJson(t.coeff), p.vars[t.var].name}));
  }
  OrderedJson body = OrderedJson::object();
  body["terms"] = std::move(terms);
  body["op"] = std::string(relOpSymbol(rel.op));
  body["rhs"] = rationalToJson(rel.rhs);
  out["rel"] = std::move(body);
  return out;
}

Condition conditionFromJson(const Problem& p, const Json& node,
                            const std::string& path) {
  if (!node.is_object() || node.size() != 1) {
    throw ParseError(path, "condition must be {lit:[..]} or {rel:{..}}");
  }
  const std::string key = node.begin().key();
  const Json& body = node.begin().value();
  const std::string bp = path + "." + key;
  if (key == "lit") {
    if (!body.is_array() || body.size() != 2 || !body[1].is_boolean()) {
      throw ParseError(bp, "expected [variable, true|false]");
    }
    return BoolLiteral{resolveVar(p, body[0], bp + "[0]"), body[1].get<bool>()};
  }
  if (key != "rel") throw ParseError(path, "unknown key '" + key + "'");
  requireObject(body, bp, {"terms", "op", "rhs"});
  LinearRelation rel;
  const auto& terms = requireArray(body.at("terms"), bp + ".terms");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = bp + ".terms[" + std::to_string(i) + "]";
    if (!terms[i].is_array() || terms[i].size() != 2) {
      throw ParseError(tp, "expected [coefficient, variable]");
    }
    rel.terms.push_back({resolveVar(p, terms[i][1], tp + "[1]"),
                         rationalFromJson(terms[i][0], tp + "[0]")});
  }
  std::stable_sort(rel.terms.begin(), rel.terms.end(),
                   [](const LinearTerm& a, const LinearTerm& b) {
                     return a.var < b.var;
                   });
  rel.op = parseOp(body.at("op"), bp + ".op");
  rel.rhs = rationalFromJson(body.at("rhs"), bp + ".rhs");
  return rel;
}

OrderedJson problemToJson(const Problem& p) {
  OrderedJson doc = OrderedJson::object();
  OrderedJson vars = OrderedJson::array();
  for (const auto& v : p.vars) {
    OrderedJson var = OrderedJson::object();
    var["name"] = v.name;
    var["kind"] = std::string(varKindName(v.kind));
    if (v.lower) var["lower"] = rationalToJson(*v.lower);
    if (v.upper) var["upper"] = rationalToJson(*v.upper);
    vars.push_back(std::move(var));
  }
  doc["vars"] = std::move(vars);

  OrderedJson actions = OrderedJson::array();
  for (const auto& a : p.actions) {
    OrderedJson act = OrderedJson::object();
    act["name"] = a.name;
    act["pre"] = OrderedJson::array();
    for (const auto& c : a.pre) act["pre"].push_back(conditionToJson(p, c));
    act["eff"] = OrderedJson::array();
    for (const auto& e : a.eff) act["eff"].push_back(effectToJson(p, e));
    actions.push_back(std::move(act));
  }
  doc["actions"] = std::move(actions);

  OrderedJson init = OrderedJson::object();
  for (const auto& v : p.vars) {
    if (v.id >= p.init.size()) break;
    if (v.kind == VarKind::Boolean) {
      init[v.name] = p.init[v.id] != 0;
    } else {
      init[v.name] = rationalToJson(p.init[v.id]);
    }
  }
  doc["init"] = std::move(init);

  doc["goal"] = OrderedJson::array();
  for (const auto& c : p.goal) doc["goal"].push_back(conditionToJson(p, c));
  if (!p.constraints.empty()) {
    doc["constraints"] = OrderedJson::array();
    for (const auto& c : p.constraints) {
      doc["constraints"].push_back(conditionToJson(p, c));
    }
  }
  return doc;
}

Problem problemFromJson(const Json& node) {
  requireObject(node, "", {"vars", "actions", "init", "goal"},
                {"constraints"});
  Problem p;
  const auto& vars = requireArray(node.at("vars"), "vars");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string path = "vars[" + std::to_string(i) + "]";
    requireObject(vars[i], path, {"name", "kind"}, {"lower", "upper"});
    StateVariable v;
    v.id = static_cast<VarId>(i);
    v.name = requireString(vars[i].at("name"), path + ".name");
    const std::string kind = requireString(vars[i].at("kind"), path + ".kind");
    if (kind == "boolean") {
      v.kind = VarKind::Boolean;
    } else if (kind == "integer") {
      v.kind = VarKind::Integer;
    } else if (kind == "real") {
      v.kind = VarKind::Real;
    } else {
      throw ParseError(path + ".kind", "unknown kind '" + kind + "'");
    }
    v.lower = optionalBound(vars[i], "lower", path);
    v.upper = optionalBound(vars[i], "upper", path);
    p.vars.push_back(std::move(v));
  }

  const auto& actions = requireArray(node.at("actions"), "actions");
  for (std::size_t a = 0; a < actions.size(); ++a) {
    const std::string path = "actions[" + std::to_string(a) + "]";
    requireObject(actions[a], path, {"name", "pre", "eff"});
    Action act;
    act.name = requireString(actions[a].at("name"), path + ".name");
    const auto& pre = requireArray(actions[a].at("pre"), path + ".pre");
    for (std::size_t i = 0; i < pre.size(); ++i) {
      act.pre.push_back(conditionFromJson(
          p, pre[i], path + ".pre[" + std::to_string(i) + "]"));
    }
    const auto& eff = requireArray(actions[a].at("eff"), path + ".eff");
    for (std::size_t i = 0; i < eff.size(); ++i) {
      act.eff.push_back(
          effectFromJson(p, eff[i], path + ".eff[" + std::to_string(i) + "]"));
    }
    p.actions.push_back(std::move(act));
  }

  const Json& init = node.at("init");
  if (!init.is_object()) throw ParseError("init", "expected an object");
  for (const auto& [key, value] : init.items()) {
    if (!p.findVar(key)) {
      throw ValidationError({{"init." + key, "unknown variable '" + key + "'"}});
    }
  }
  std::vector<Diagnostic> missing;
  p.init.resize(p.vars.size());
  for (const auto& v : p.vars) {
    const std::string path = "init." + v.name;
    if (!init.contains(v.name)) {
      missing.push_back({path, "no initial value for '" + v.name + "'"});
      continue;
    }
    const Json& value = init.at(v.name);
    if (v.kind == VarKind::Boolean) {
      if (!value.is_boolean()) throw ParseError(path, "expected true|false");
      p.init[v.id] = value.get<bool>() ? 1 : 0;
    } else {
      p.init[v.id] = rationalFromJson(value, path);
    }
  }
  if (!missing.empty()) throw ValidationError(std::move(missing));

  const auto& goal = requireArray(node.at("goal"), "goal");
  for (std::size_t i = 0; i < goal.size(); ++i) {
    p.goal.push_back(
        conditionFromJson(p, goal[i], "goal[" + std::to_string(i) + "]"));
  }
  if (node.contains("constraints")) {
    const auto& cons = requireArray(node.at("constraints"), "constraints");
    for (std::size_t i = 0; i < cons.size(); ++i) {
      p.constraints.push_back(conditionFromJson(
          p, cons[i], "constraints[" + std::to_string(i) + "]"));
    }
  }
  return p;
}

}  // namespace json

Problem parseProblem(std::string_view text) {
  json::Json doc;
  try {
    doc = json::Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed document: ") + e.what());
  }
  Problem p = json::problemFromJson(doc);
  auto diags = validateProblem(p);
  if (!diags.empty()) throw ValidationError(std::move(diags));
  return p;
}

std::string serializeProblem(const Problem& p) {
  return json::problemToJson(p).dump(2) + "\n";
}

}  // namespace petriplan
