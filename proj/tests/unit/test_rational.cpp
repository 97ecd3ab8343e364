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


#include <gtest/gtest.h>

#include "petriplan/rational.hpp"

namespace petriplan {
namespace {

// mpq_class(n, d) does not reduce; parsed values always are.
Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

TEST(RationalTest, ParsesIntegersAndFractions) {
  EXPECT_EQ(parseRational("7"), Rational(7));
  EXPECT_EQ(parseRational("-3/6"), q(-1, 2));
  EXPECT_THROW(parseRational("1/0"), std::invalid_argument);
  EXPECT_THROW(parseRational("abc"), std::invalid_argument);
  EXPECT_THROW(parseRational(""), std::invalid_argument);
}

TEST(RationalTest, FormatIsCanonical) {
  EXPECT_EQ(formatRational(q(4, 2)), "2");
  EXPECT_EQ(formatRational(q(-2, 6)), "-1/3");
  EXPECT_EQ(parseRational(formatRational(q(22, 7))), q(22, 7));
}

TEST(RationalTest, FloorAndCeilOnNegatives) {
  EXPECT_EQ(floorOf(q(-7, 2)), Rational(-4));
  EXPECT_EQ(ceilOf(q(-7, 2)), Rational(-3));
  EXPECT_EQ(floorOf(Rational(5)), Rational(5));
  EXPECT_TRUE(isIntegral(q(6, 3)));
  EXPECT_FALSE(isIntegral(q(1, 3)));
}

TEST(RationalTest, CompareHonorsOperator) {
  EXPECT_TRUE(compare(Rational(1), RelOp::Le, Rational(1)));
  EXPECT_FALSE(compare(Rational(2), RelOp::Le, Rational(1)));
  EXPECT_TRUE(compare(Rational(2), RelOp::Ge, Rational(1)));
  EXPECT_TRUE(compare(q(1, 2), RelOp::Eq, q(2, 4)));
}

TEST(RationalTest, NormalizeMergesAndDropsZeros) {
  std::vector<LinearTerm> t = {{2, Rational(1)}, {0, Rational(3)},
                               {2, Rational(-1)}, {1, Rational(2)},
                               {0, Rational(1)}};
  normalizeTerms(t);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], (LinearTerm{0, Rational(4)}));
  EXPECT_EQ(t[1], (LinearTerm{1, Rational(2)}));
}

TEST(IntervalTest, IntersectAndHull) {
  Interval a{Rational(0), Rational(5)};
  Interval b{Rational(3), std::nullopt};
  EXPECT_EQ(a.intersect(b), (Interval{Rational(3), Rational(5)}));
  EXPECT_EQ(a.hull(b), (Interval{Rational(0), std::nullopt}));
  EXPECT_TRUE((Interval{Rational(2), Rational(1)}).empty());
  EXPECT_TRUE(Interval::point(Rational(1)).isPoint());
}

TEST(IntervalTest, ActivityOfMixedSigns) {
  // 2x - y with x in [0,3], y in [1,2]: [0-2, 6-1].
  std::vector<Interval> box = {{Rational(0), Rational(3)},
                               {Rational(1), Rational(2)}};
  const Interval act =
      activity({{0, Rational(2)}, {1, Rational(-1)}},
               [&](std::uint32_t v) { return box[v]; });
  EXPECT_EQ(act, (Interval{Rational(-2), Rational(5)}));
  box[1].hi.reset();
  const Interval open =
      activity({{0, Rational(2)}, {1, Rational(-1)}},
               [&](std::uint32_t v) { return box[v]; });
  EXPECT_FALSE(open.lo.has_value());
  EXPECT_EQ(open.hi, Rational(5));
}

}  // namespace
}  // namespace petriplan
