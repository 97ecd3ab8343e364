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

#include "petriplan/lp.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace petriplan {

Simplex::Var Simplex::addVariable(std::optional<Rational> lo,
                                  std::optional<Rational> hi) {
  const auto v = static_cast<Var>(value_.size());
  cols_.emplace_back();
  rowOf_.push_back(-1);
  scatter_.push_back(-1);
  Rational start = 0;
  if (lo && start < *lo) start = *lo;
  if (hi && start > *hi) start = *hi;
  value_.push_back(start);
  lo_.push_back(std::move(lo));
  hi_.push_back(std::move(hi));
  noteBounds(v, false);
  return v;
}

void Simplex::noteBounds(Var v, bool before) {
  if (lo_[v] && hi_[v] && *lo_[v] > *hi_[v]) {
    if (before) {
      --crossedBounds_;
    } else {
      ++crossedBounds_;
    }
  }
}

void Simplex::addEntry(std::uint32_t r, Var v, const Rational& c) {
  rows_[r].push_back({v, c, static_cast<std::uint32_t>(cols_[v].size())});
  cols_[v].push_back({r, static_cast<std::uint32_t>(rows_[r].size() - 1)});
}

void Simplex::removeEntry(std::uint32_t r, std::uint32_t pos) {
  auto& row = rows_[r];
  const Var v = row[pos].var;
  const std::uint32_t cp = row[pos].colPos;
  auto& col = cols_[v];
  if (cp + 1 != col.size()) {
    col[cp] = col.back();
    rows_[col[cp].row][col[cp].rowPos].colPos = cp;
  }
  col.pop_back();
  if (pos + 1 != row.size()) {
    row[pos] = std::move(row.back());
    cols_[row[pos].var][row[pos].colPos].rowPos = pos;
  }
  row.pop_back();
}

void Simplex::deleteRow(std::uint32_t r) {
  while (!rows_[r].empty()) {
    removeEntry(r, static_cast<std::uint32_t>(rows_[r].size() - 1));
  }
  rowOf_[basicOf_[r]] = -1;
  const auto last = static_cast<std::uint32_t>(rows_.size() - 1);
  if (r != last) {
    rows_[r] = std::move(rows_[last]);
    basicOf_[r] = basicOf_[last];
    rowOf_[basicOf_[r]] = static_cast<std::int32_t>(r);
    for (const auto& e : rows_[r]) cols_[e.var][e.colPos].row = r;
  }
  rows_.pop_back();
  basicOf_.pop_back();
}

const Rational& Simplex::rowCoeff(std::uint32_t r, Var v) const {
  for (const auto& c : cols_[v]) {
    if (c.row == r) return rows_[r][c.rowPos].coeff;
  }
  static const Rational zero = 0;
  return zero;
}

void Simplex::pivot(std::uint32_t r, Var entering) {
  const Var leaving = basicOf_[r];
  std::uint32_t pos = 0;
  for (const auto& c : cols_[entering]) {
    if (c.row == r) pos = c.rowPos;
  }
  const Rational inv = 1 / rows_[r][pos].coeff;
  removeEntry(r, pos);
  for (auto& e : rows_[r]) e.coeff *= -inv;
  addEntry(r, leaving, inv);
  basicOf_[r] = entering;
  rowOf_[entering] = static_cast<std::int32_t>(r);
  rowOf_[leaving] = -1;

  const std::vector<ColEntry> occurrences = cols_[entering];
  for (const auto& occ : occurrences) {
    const std::uint32_t r2 = occ.row;
    const Rational c2 = rows_[r2][occ.rowPos].coeff;
    removeEntry(r2, occ.rowPos);
    auto& target = rows_[r2];
    for (std::uint32_t i = 0; i < target.size(); ++i) {
      scatter_[target[i].var] = static_cast<std::int32_t>(i);
    }
    for (const auto& e : rows_[r]) {
      const std::int32_t at = scatter_[e.var];
      if (at >= 0) {
        target[at].coeff += c2 * e.coeff;
      } else {
        addEntry(r2, e.var, c2 * e.coeff);
        scatter_[e.var] = static_cast<std::int32_t>(target.size() - 1);
      }
    }
    for (const auto& e : target) scatter_[e.var] = -1;
    for (auto p = static_cast<std::uint32_t>(target.size()); p-- > 0;) {
      if (target[p].coeff == 0) removeEntry(r2, p);
    }
  }
}

void Simplex::moveNonbasic(Var v, const Rational& target) {
  const Rational delta = target - value_[v];
  if (delta == 0) return;
  for (const auto& c : cols_[v]) {
    value_[basicOf_[c.row]] += rows_[c.row][c.rowPos].coeff * delta;
  }
  value_[v] = target;
}

void Simplex::pivotAndUpdate(std::uint32_t r, Var entering,
                             const Rational& target) {
  const Var leaving = basicOf_[r];
  const Rational theta = (target - value_[leaving]) / rowCoeff(r, entering);
  moveNonbasic(entering, value_[entering] + theta);
  pivot(r, entering);
}

void Simplex::countPivot() {
  if (++pivots_ > pivotLimit_) {
    throw ResourceLimitError("simplex pivot limit exceeded");
  }
}

bool Simplex::violates(Var v) const {
  return (lo_[v] && value_[v] < *lo_[v]) || (hi_[v] && value_[v] > *hi_[v]);
}

Simplex::Var Simplex::addRow(const std::vector<LinearTerm>& terms) {
  const Var s = addVariable();
  const auto r = static_cast<std::uint32_t>(rows_.size());
  rows_.emplace_back();
  basicOf_.push_back(s);
  rowOf_[s] = static_cast<std::int32_t>(r);
  auto accumulate = [&](Var v, const Rational& c) {
    const std::int32_t at = scatter_[v];
    if (at >= 0) {
      rows_[r][at].coeff += c;
    } else {
      addEntry(r, v, c);
      scatter_[v] = static_cast<std::int32_t>(rows_[r].size() - 1);
    }
  };
  Rational total = 0;
  for (const auto& t : terms) {
    total += t.coeff * value_[t.var];
    if (rowOf_[t.var] >= 0) {
      for (const auto& e : rows_[rowOf_[t.var]]) {
        accumulate(e.var, t.coeff * e.coeff);
      }
    } else {
      accumulate(t.var, t.coeff);
    }
  }
  for (const auto& e : rows_[r]) scatter_[e.var] = -1;
  for (auto p = static_cast<std::uint32_t>(rows_[r].size()); p-- > 0;) {
    if (rows_[r][p].coeff == 0) removeEntry(r, p);
  }
  value_[s] = total;
  return s;
}

void Simplex::removeRow(Var slack) {
  if (rowOf_[slack] < 0) {
    if (cols_[slack].empty()) return;
    pivot(cols_[slack].front().row, slack);
  }
  deleteRow(static_cast<std::uint32_t>(rowOf_[slack]));
  setBounds(slack, std::nullopt, std::nullopt);
}

void Simplex::setBounds(Var v, std::optional<Rational> lo,
                        std::optional<Rational> hi) {
  noteBounds(v, true);
  lo_[v] = std::move(lo);
  hi_[v] = std::move(hi);
  noteBounds(v, false);
  if (rowOf_[v] >= 0) return;
  if (lo_[v] && value_[v] < *lo_[v]) {
    moveNonbasic(v, *lo_[v]);
  } else if (hi_[v] && value_[v] > *hi_[v]) {
    moveNonbasic(v, *hi_[v]);
  }
}

Simplex::Status Simplex::check() {
  if (crossedBounds_ > 0) return Status::Infeasible;
  for (;;) {
    std::int32_t row = -1;
    Var best = 0;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      const Var b = basicOf_[r];
      if ((row < 0 || b < best) && violates(b)) {
        row = static_cast<std::int32_t>(r);
        best = b;
      }
    }
    if (row < 0) return Status::Feasible;
    countPivot();
    const bool increase = lo_[best] && value_[best] < *lo_[best];
    std::optional<Var> entering;
    for (const auto& e : rows_[row]) {
      const bool up = (e.coeff > 0) == increase;
      const bool ok = up ? canIncrease(e.var) : canDecrease(e.var);
      if (ok && (!entering || e.var < *entering)) entering = e.var;
    }
    if (!entering) return Status::Infeasible;
    pivotAndUpdate(static_cast<std::uint32_t>(row), *entering,
                   increase ? *lo_[best] : *hi_[best]);
  }
}

Simplex::OptStatus Simplex::minimize(const std::vector<LinearTerm>& objective) {
  if (check() == Status::Infeasible) return OptStatus::Infeasible;
  std::vector<Rational> d(value_.size());
  for (const auto& t : objective) {
    if (rowOf_[t.var] >= 0) {
      for (const auto& e : rows_[rowOf_[t.var]]) d[e.var] += t.coeff * e.coeff;
    } else {
      d[t.var] += t.coeff;
    }
  }
  for (;;) {
    std::optional<Var> entering;
    for (Var v = 0; v < d.size(); ++v) {
      if (d[v] == 0 || rowOf_[v] >= 0) continue;
      if ((d[v] < 0 && canIncrease(v)) || (d[v] > 0 && canDecrease(v))) {
        entering = v;
        break;
      }
    }
    if (!entering) return OptStatus::Optimal;
    countPivot();
    const Var j = *entering;
    const int dir = d[j] < 0 ? 1 : -1;

    std::optional<Rational> ownLimit;
    if (dir > 0 && hi_[j]) ownLimit = *hi_[j] - value_[j];
    if (dir < 0 && lo_[j]) ownLimit = value_[j] - *lo_[j];

    std::optional<Rational> rowLimit;
    std::uint32_t leaveRow = 0;
    Var leaveVar = 0;
    Rational leaveTarget;
    for (const auto& c : cols_[j]) {
      const Var b = basicOf_[c.row];
      const Rational rate = rows_[c.row][c.rowPos].coeff * dir;
      std::optional<Rational> lim;
      std::optional<Rational> target;
      if (rate > 0 && hi_[b]) {
        lim = (*hi_[b] - value_[b]) / rate;
        target = hi_[b];
      } else if (rate < 0 && lo_[b]) {
        lim = (value_[b] - *lo_[b]) / -rate;
        target = lo_[b];
      }
      if (!lim) continue;
      if (!rowLimit || *lim < *rowLimit || (*lim == *rowLimit && b < leaveVar)) {
        rowLimit = lim;
        leaveRow = c.row;
        leaveVar = b;
        leaveTarget = *target;
      }
    }
    if (!ownLimit && !rowLimit) return OptStatus::Unbounded;
    if (!rowLimit || (ownLimit && *ownLimit <= *rowLimit)) {
      moveNonbasic(j, value_[j] + dir * *ownLimit);
      continue;
    }
    pivotAndUpdate(leaveRow, j, leaveTarget);
    const Rational dj = d[j];
    d[j] = 0;
    for (const auto& e : rows_[rowOf_[j]]) d[e.var] += dj * e.coeff;
  }
}

std::uint32_t LinProgram::addVar(std::string name, std::optional<Rational> lo,
                                 std::optional<Rational> hi, bool integer) {
  vars.push_back({std::move(name), std::move(lo), std::move(hi), integer});
  return static_cast<std::uint32_t>(vars.size() - 1);
}

void LinProgram::addRow(std::vector<LinearTerm> terms, RelOp op, Rational rhs) {
  rows.push_back({std::move(terms), op, std::move(rhs)});
}

namespace {

void tightenLower(std::optional<Rational>& lo, const Rational& v) {
  if (!lo || v > *lo) lo = v;
}
void tightenUpper(std::optional<Rational>& hi, const Rational& v) {
  if (!hi || v < *hi) hi = v;
}

struct Loaded {
  Simplex simplex;
  bool trivialInfeasible = false;
};

void load(const LinProgram& lp, Loaded& out) {
  std::vector<std::optional<Rational>> lo(lp.vars.size());
  std::vector<std::optional<Rational>> hi(lp.vars.size());
  for (std::size_t i = 0; i < lp.vars.size(); ++i) {
    lo[i] = lp.vars[i].lower;
    hi[i] = lp.vars[i].upper;
  }
  std::vector<const LpRow*> general;
  for (const auto& row : lp.rows) {
    std::vector<LinearTerm> terms = row.terms;
    normalizeTerms(terms);
    if (terms.empty()) {
      if (!compare(Rational(0), row.op, row.rhs)) out.trivialInfeasible = true;
      continue;
    }
    if (terms.size() > 1) {
      general.push_back(&row);
      continue;
    }
    const auto v = terms[0].var;
    const Rational bound = row.rhs / terms[0].coeff;
    const bool flip = terms[0].coeff < 0;
    if (row.op == RelOp::Eq || (row.op == RelOp::Le) == flip) {
      tightenLower(lo[v], bound);
    }
    if (row.op == RelOp::Eq || (row.op == RelOp::Le) != flip) {
      tightenUpper(hi[v], bound);
    }
  }
  for (std::size_t i = 0; i < lp.vars.size(); ++i) {
    out.simplex.addVariable(lo[i], hi[i]);
  }
  for (const LpRow* row : general) {
    const auto s = out.simplex.addRow(row->terms);
    std::optional<Rational> slo;
    std::optional<Rational> shi;
    if (row->op != RelOp::Le) slo = row->rhs;
    if (row->op != RelOp::Ge) shi = row->rhs;
    out.simplex.setBounds(s, slo, shi);
  }
}

std::vector<Rational> pointOf(const Simplex& s, std::size_t n) {
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = s.value(static_cast<Simplex::Var>(i));
  return out;
}

}  // namespace

LpResult lpFeasible(const LinProgram& lp) {
  Loaded loaded;
  load(lp, loaded);
  LpResult res;
  if (loaded.trivialInfeasible ||
      loaded.simplex.check() == Simplex::Status::Infeasible) {
    res.status = LpResult::Status::Infeasible;
  } else {
    res.status = LpResult::Status::Feasible;
    res.point = pointOf(loaded.simplex, lp.vars.size());
  }
  res.pivots = loaded.simplex.pivots();
  return res;
}

LpResult lpOptimize(const LinProgram& lp) {
  if (!lp.objective) {
    throw std::invalid_argument("lp_optimize requires an objective");
  }
  Loaded loaded;
  load(lp, loaded);
  LpResult res;
  if (loaded.trivialInfeasible) {
    res.status = LpResult::Status::Infeasible;
    return res;
  }
  std::vector<LinearTerm> obj = lp.objective->terms;
  if (lp.objective->maximize) {
    for (auto& t : obj) t.coeff = -t.coeff;
  }
  switch (loaded.simplex.minimize(obj)) {
    case Simplex::OptStatus::Infeasible:
      res.status = LpResult::Status::Infeasible;
      break;
    case Simplex::OptStatus::Unbounded:
      res.status = LpResult::Status::Unbounded;
      break;
    case Simplex::OptStatus::Optimal: {
      res.status = LpResult::Status::Feasible;
      res.point = pointOf(loaded.simplex, lp.vars.size());
      Rational value = 0;
      for (const auto& t : lp.objective->terms) {
        value += t.coeff * (*res.point)[t.var];
      }
      res.objectiveValue = value;
      break;
    }
  }
  res.pivots = loaded.simplex.pivots();
  return res;
}

bool satisfies(const LinProgram& lp, const std::vector<Rational>& point) {
  if (point.size() != lp.vars.size()) return false;
  for (std::size_t i = 0; i < lp.vars.size(); ++i) {
    if (lp.vars[i].lower && point[i] < *lp.vars[i].lower) return false;
    if (lp.vars[i].upper && point[i] > *lp.vars[i].upper) return false;
  }
  for (const auto& row : lp.rows) {
    Rational lhs = 0;
    for (const auto& t : row.terms) lhs += t.coeff * point[t.var];
    if (!compare(lhs, row.op, row.rhs)) return false;
  }
  return true;
}

namespace {

std::vector<std::string> lpNames(const LinProgram& lp) {
  std::vector<std::string> out;
  std::set<std::string> used;
  for (std::size_t i = 0; i < lp.vars.size(); ++i) {
    std::string name;
    for (char c : lp.vars[i].name) {
      const bool ok = std::isalnum(static_cast<unsigned char>(c)) ||
                      c == '_' || c == '.' || c == '@' || c == '#';
      name += ok ? c : '_';
    }
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])) ||
        name[0] == '.' || name[0] == 'e' || name[0] == 'E') {
      name = "x_" + name;
    }
    if (!used.insert(name).second) {
      name += "_" + std::to_string(i);
      used.insert(name);
    }
    out.push_back(std::move(name));
  }
  return out;
}

std::string linearText(const std::vector<LinearTerm>& terms,
                       const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Rational& c = terms[i].coeff;
    if (i == 0) {
      if (c < 0) out += "- ";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const Rational a = abs(c);
    if (a != 1) out += formatDecimal(a) + " ";
    out += names[terms[i].var];
  }
  return out;
}

}  // namespace

std::string writeCplexLp(const LinProgram& lp) {
  const auto names = lpNames(lp);
  std::ostringstream os;
  const bool maximize = lp.objective && lp.objective->maximize;
  os << (maximize ? "Maximize\n" : "Minimize\n");
  os << " obj:";
  if (lp.objective && !lp.objective->terms.empty()) {
    os << " " << linearText(lp.objective->terms, names);
  }
  os << "\nSubject To\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    std::vector<LinearTerm> terms = lp.rows[i].terms;
    Rational rhs = lp.rows[i].rhs;
    normalizeTerms(terms);
    mpz_class l = rhs.get_den();
    for (const auto& t : terms) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    for (auto& t : terms) t.coeff *= l;
    rhs *= l;
    if (terms.empty()) continue;
    os << " r" << i << ": " << linearText(terms, names) << " "
       << relOpSymbol(lp.rows[i].op) << " " << formatRational(rhs) << "\n";
  }
  os << "Bounds\n";
  std::vector<std::string> general;
  std::vector<std::string> binary;
  for (std::size_t i = 0; i < lp.vars.size(); ++i) {
    const auto& v = lp.vars[i];
    const std::string& n = names[i];
    if (v.lower && v.upper && *v.lower == *v.upper) {
      os << " " << n << " = " << formatDecimal(*v.lower) << "\n";
    } else if (v.lower && v.upper) {
      os << " " << formatDecimal(*v.lower) << " <= " << n
         << " <= " << formatDecimal(*v.upper) << "\n";
    } else if (v.lower) {
      os << " " << n << " >= " << formatDecimal(*v.lower) << "\n";
    } else if (v.upper) {
      os << " -inf <= " << n << " <= " << formatDecimal(*v.upper) << "\n";
    } else {
      os << " " << n << " free\n";
    }
    if (v.integer) {
      const bool isBinary = v.lower && v.upper && *v.lower == 0 && *v.upper == 1;
      (isBinary ? binary : general).push_back(n);
    }
  }
  auto section = [&](const char* head, const std::vector<std::string>& list) {
    if (list.empty()) return;
    os << head << "\n";
    for (const auto& n : list) os << " " << n << "\n";
  };
  section("General", general);
  section("Binary", binary);
  os << "End\n";
  return os.str();
}

}  // namespace petriplan
