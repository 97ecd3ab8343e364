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

#include "petriplan/rational.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <stdexcept>

namespace petriplan {

namespace {

bool validInteger(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parseRational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1")
                                      : text.substr(slash + 1);
  if (!validInteger(num) || !validInteger(den) || den.front() == '-' ||
      den.front() == '+') {
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  }
  std::string n(num);
  if (!n.empty() && n.front() == '+') n.erase(0, 1);
  mpz_class numerator(n, 10);
  mpz_class denominator(std::string(den), 10);
  if (denominator == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) +
                                "'");
  }
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

std::string formatRational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string formatDecimal(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  // Terminating decimals are printed exactly; others get 20 digits.
  mpz_class den = value.get_den();
  int twos = 0;
  int fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  const int digits = den == 1 ? std::max(twos, fives) : 20;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Rational scaled = abs(value) * scale;
  mpz_class whole = scaled.get_num() / scaled.get_den();
  std::string body = whole.get_str();
  if (body.size() <= static_cast<std::size_t>(digits)) {
    body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
  }
  body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  while (body.back() == '0') body.pop_back();
  if (body.back() == '.') body.pop_back();
  return (value < 0 ? "-" : "") + body;
}

bool isIntegral(const Rational& value) { return value.get_den() == 1; }

Rational floorOf(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

Rational ceilOf(const Rational& value) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

std::size_t hashRational(const Rational& value) {
  const std::size_t h1 = mpz_get_ui(value.get_num_mpz_t()) ^
                         (mpz_sgn(value.get_num_mpz_t()) < 0 ? 0x9e37u : 0u);
  const std::size_t h2 = mpz_get_ui(value.get_den_mpz_t());
  return h1 * 1000003u ^ (h2 + 0x9e3779b97f4a7c15ull + (h1 << 6) + (h1 >> 2));
}

std::string_view relOpSymbol(RelOp op) {
  switch (op) {
    case RelOp::Le:
      return "<=";
    case RelOp::Ge:
      return ">=";
    case RelOp::Eq:
      return "=";
  }
  return "?";
}

bool compare(const Rational& lhs, RelOp op, const Rational& rhs) {
  switch (op) {
    case RelOp::Le:
      return lhs <= rhs;
    case RelOp::Ge:
      return lhs >= rhs;
    case RelOp::Eq:
      return lhs == rhs;
  }
  return false;
}

void normalizeTerms(std::vector<LinearTerm>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const LinearTerm& a, const LinearTerm& b) { return a.var < b.var; });
  std::vector<LinearTerm> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const LinearTerm& t) { return t.coeff == 0; }),
               merged.end());
  terms = std::move(merged);
}

Interval Interval::intersect(const Interval& other) const {
  Interval out = *this;
  if (other.lo && (!out.lo || *other.lo > *out.lo)) out.lo = other.lo;
  if (other.hi && (!out.hi || *other.hi < *out.hi)) out.hi = other.hi;
  return out;
}

Interval Interval::hull(const Interval& other) const {
  Interval out;
  if (lo && other.lo) out.lo = *lo < *other.lo ? *lo : *other.lo;
  if (hi && other.hi) out.hi = *hi > *other.hi ? *hi : *other.hi;
  return out;
}

}  // namespace petriplan
