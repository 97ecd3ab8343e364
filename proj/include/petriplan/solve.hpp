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

// Incremental constraint store over the expression language, decided by
// branch and bound on top of the exact simplex. Assertions only ever grow;
// everything retractable is passed as an assumption of a single check.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "petriplan/encode.hpp"
#include "petriplan/expr.hpp"
#include "petriplan/lp.hpp"

namespace petriplan {

class NodeLimitError : public ResourceLimitError {
 public:
  using ResourceLimitError::ResourceLimitError;
};

struct SolverOptions {
  std::uint64_t nodeLimit = 1'000'000;
  std::uint64_t pivotLimit = Simplex::kDefaultPivotLimit;
  /// Seed each check with the previous model when it still fits.
  bool warmStart = true;
};

/// Values indexed by variable; Booleans are 0/1.
using Model = std::vector<Rational>;

struct CheckResult {
  enum class Status { Sat, Unsat };
  Status status = Status::Unsat;
  Model model;
  std::optional<Rational> objective;
  std::uint64_t nodes = 0;

  bool sat() const { return status == Status::Sat; }
};

struct SolverStats {
  std::uint64_t checks = 0;
  std::uint64_t nodes = 0;
  std::uint64_t pivots = 0;
  std::uint64_t warmStartHits = 0;
};

class SolverState {
 public:
  explicit SolverState(SolverOptions opts = {});
  ~SolverState();
  SolverState(SolverState&&) noexcept;
  SolverState& operator=(SolverState&&) noexcept;

  /// Throws std::invalid_argument on redeclaration.
  ExprVar declare(const std::string& name, Sort sort,
                  std::optional<Rational> lower = std::nullopt,
                  std::optional<Rational> upper = std::nullopt);
  const VarTable& vars() const;

  /// Persistent. Throws std::invalid_argument on undeclared variables.
  void assertExpr(const Expr& e);
  const std::vector<Expr>& assertions() const;

  /// Throws NodeLimitError / ResourceLimitError past the caps.
  CheckResult checkAssuming(const std::vector<Expr>& assumptions);
  /// Minimum of sum(objective) over persistent assertions and assumptions.
  CheckResult minimize(const std::vector<LinearTerm>& objective,
                       const std::vector<Expr>& assumptions = {});

  /// Declarations and assertions as SMT-LIB 2.
  std::string exportSmt2(const std::vector<Expr>& assumptions = {}) const;
  /// The translated system with Big-M rows, CPLEX LP format.
  std::string exportLp() const;
  /// The persistent assertions translated for the given mode.
  MilpConstraintSet translation(TranslationMode mode) const;

  const SolverStats& stats() const;
  void setWarmStart(bool on);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace petriplan
