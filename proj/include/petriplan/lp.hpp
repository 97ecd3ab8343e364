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

// Exact rational linear programming over box-bounded variables.
//
// Simplex keeps a sparse tableau in which every row defines one basic
// variable as a combination of nonbasic ones. Rows and bounds can be added,
// changed and removed between checks; the basis survives, which is what the
// branch-and-bound layer relies on for warm re-solves.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "petriplan/rational.hpp"

namespace petriplan {

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Simplex {
 public:
  using Var = std::uint32_t;

  static constexpr std::uint64_t kDefaultPivotLimit = 10'000'000;

  explicit Simplex(std::uint64_t pivotLimit = kDefaultPivotLimit)
      : pivotLimit_(pivotLimit) {}

  Var addVariable(std::optional<Rational> lo = std::nullopt,
                  std::optional<Rational> hi = std::nullopt);
  /// New basic variable s = sum(terms); bound it with setBounds.
  Var addRow(const std::vector<LinearTerm>& terms);
  /// Drops the row defining `slack`; the variable stays, unconstrained.
  void removeRow(Var slack);
  void setBounds(Var v, std::optional<Rational> lo, std::optional<Rational> hi);
  const std::optional<Rational>& lower(Var v) const { return lo_[v]; }
  const std::optional<Rational>& upper(Var v) const { return hi_[v]; }

  enum class Status { Feasible, Infeasible };
  /// Finds values within every bound, or proves none exist.
  /// Throws ResourceLimitError past the pivot limit.
  Status check();

  enum class OptStatus { Optimal, Unbounded, Infeasible };
  /// Minimizes sum(objective) over the current constraints.
  OptStatus minimize(const std::vector<LinearTerm>& objective);

  const Rational& value(Var v) const { return value_[v]; }
  std::size_t numVars() const { return value_.size(); }
  std::size_t numRows() const { return rows_.size(); }
  std::uint64_t pivots() const { return pivots_; }
  /// Total pivots (over the lifetime) allowed before check() throws.
  void setPivotLimit(std::uint64_t limit) { pivotLimit_ = limit; }
  bool isBasic(Var v) const { return rowOf_[v] >= 0; }

 private:
  struct RowEntry {
    Var var;
    Rational coeff;
    std::uint32_t colPos;
  };
  struct ColEntry {
    std::uint32_t row;
    std::uint32_t rowPos;
  };

  void addEntry(std::uint32_t r, Var v, const Rational& c);
  void removeEntry(std::uint32_t r, std::uint32_t pos);
  void deleteRow(std::uint32_t r);
  void pivot(std::uint32_t r, Var entering);
  void pivotAndUpdate(std::uint32_t r, Var entering, const Rational& target);
  void moveNonbasic(Var v, const Rational& target);
  const Rational& rowCoeff(std::uint32_t r, Var v) const;
  bool violates(Var v) const;
  bool canIncrease(Var v) const { return !hi_[v] || value_[v] < *hi_[v]; }
  bool canDecrease(Var v) const { return !lo_[v] || value_[v] > *lo_[v]; }
  void countPivot();
  void noteBounds(Var v, bool before);

  std::vector<std::vector<RowEntry>> rows_;
  std::vector<Var> basicOf_;
  std::vector<std::vector<ColEntry>> cols_;
  std::vector<std::int32_t> rowOf_;
  std::vector<Rational> value_;
  std::vector<std::optional<Rational>> lo_;
  std::vector<std::optional<Rational>> hi_;
  std::vector<std::int32_t> scatter_;
  std::size_t crossedBounds_ = 0;
  std::uint64_t pivots_ = 0;
  std::uint64_t pivotLimit_;
};

struct LpVar {
  std::string name;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
  bool integer = false;
};

struct LpRow {
  std::vector<LinearTerm> terms;
  RelOp op = RelOp::Le;
  Rational rhs;
};

struct LpObjective {
  bool maximize = false;
  std::vector<LinearTerm> terms;
};

struct LinProgram {
  std::vector<LpVar> vars;
  std::vector<LpRow> rows;
  std::optional<LpObjective> objective;

  std::uint32_t addVar(std::string name, std::optional<Rational> lo,
                       std::optional<Rational> hi, bool integer = false);
  void addRow(std::vector<LinearTerm> terms, RelOp op, Rational rhs);
};

struct LpResult {
  enum class Status { Feasible, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  std::optional<std::vector<Rational>> point;
  std::optional<Rational> objectiveValue;
  std::uint64_t pivots = 0;
};

/// Ignores integrality flags and the objective.
LpResult lpFeasible(const LinProgram& lp);
/// Requires an objective; integrality flags are ignored.
LpResult lpOptimize(const LinProgram& lp);

/// True when `point` satisfies every row and bound exactly.
bool satisfies(const LinProgram& lp, const std::vector<Rational>& point);

/// CPLEX LP text. Rows are scaled to integer coefficients; names are
/// sanitized to the format's identifier alphabet.
std::string writeCplexLp(const LinProgram& lp);

}  // namespace petriplan
