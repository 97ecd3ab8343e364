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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace petriplan {

/// Exact arbitrary-precision rational. All model data and all LP
/// arithmetic use this type; there is no floating-point path.
using Rational = mpq_class;

/// Parses "p/q", "-p/q" or an integer literal. Throws std::invalid_argument.
Rational parseRational(std::string_view text);
/// Canonical text: "p" for integers, "p/q" otherwise.
std::string formatRational(const Rational& value);
/// Decimal rendering for formats that cannot carry fractions (LP files).
std::string formatDecimal(const Rational& value);

bool isIntegral(const Rational& value);
Rational floorOf(const Rational& value);
Rational ceilOf(const Rational& value);
std::size_t hashRational(const Rational& value);

enum class RelOp : std::uint8_t { Le, Ge, Eq };

std::string_view relOpSymbol(RelOp op);
bool compare(const Rational& lhs, RelOp op, const Rational& rhs);

struct LinearTerm {
  std::uint32_t var = 0;
  Rational coeff;

  bool operator==(const LinearTerm& other) const {
    return var == other.var && coeff == other.coeff;
  }
};

/// Sorts by variable, merges duplicates and drops zero coefficients.
void normalizeTerms(std::vector<LinearTerm>& terms);

/// Closed interval with optional (infinite) ends.
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;

  static Interval point(const Rational& v) { return {v, v}; }
  bool empty() const { return lo && hi && *lo > *hi; }
  bool isPoint() const { return lo && hi && *lo == *hi; }
  bool contains(const Rational& v) const {
    return (!lo || *lo <= v) && (!hi || v <= *hi);
  }
  Interval intersect(const Interval& other) const;
  Interval hull(const Interval& other) const;
  bool operator==(const Interval& other) const {
    return lo == other.lo && hi == other.hi;
  }
};

/// Interval of sum(coeff * x) given per-variable intervals.
template <typename BoxFn>
Interval activity(const std::vector<LinearTerm>& terms, BoxFn&& box) {
  Interval out{Rational(0), Rational(0)};
  for (const auto& t : terms) {
    const Interval b = box(t.var);
    const auto& lowSide = t.coeff > 0 ? b.lo : b.hi;
    const auto& highSide = t.coeff > 0 ? b.hi : b.lo;
    if (out.lo) {
      if (lowSide) {
        *out.lo += t.coeff * *lowSide;
      } else {
        out.lo.reset();
      }
    }
    if (out.hi) {
      if (highSide) {
        *out.hi += t.coeff * *highSide;
      } else {
        out.hi.reset();
      }
    }
  }
  return out;
}

}  // namespace petriplan
