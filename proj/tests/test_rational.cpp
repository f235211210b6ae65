// Copyright 2026 The ParityLens Authors
//
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

#include "fixtures.hpp"
#include "paritylens/errors.hpp"
#include "paritylens/rational.hpp"

namespace paritylens {
namespace {

using testing::q;

TEST(Rational, ParsesFractionsAndDecimalsExactly) {
  EXPECT_EQ(parse_rational("3/5"), q(3, 5));
  EXPECT_EQ(parse_rational("-6/4"), q(-3, 2));
  EXPECT_EQ(parse_rational("0.1"), q(1, 10));
  EXPECT_EQ(parse_rational("  .25 "), q(1, 4));
  EXPECT_EQ(parse_rational("1e-3"), q(1, 1000));
  EXPECT_EQ(parse_rational("2.5E2"), q(250));
  EXPECT_EQ(parse_rational("-0.4"), q(-2, 5));
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_THROW(parse_rational(""), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1.2.3"), Error);
}

TEST(Rational, FromDoubleUsesShortestDecimal) {
  EXPECT_EQ(rational_from_double(0.1), q(1, 10));
  EXPECT_EQ(rational_from_double(0.3), q(3, 10));
  EXPECT_EQ(rational_from_double(-2.0), q(-2));
}

TEST(Rational, Formatting) {
  EXPECT_EQ(to_fraction_string(q(4, 5)), "4/5");
  EXPECT_EQ(to_fraction_string(q(3)), "3");
  EXPECT_EQ(to_decimal_string(q(2, 3)), "0.666667");
  EXPECT_EQ(to_decimal_string(q(-2, 3)), "-0.666667");
  EXPECT_EQ(to_decimal_string(q(1, 8), 2), "0.13");
  EXPECT_EQ(to_decimal_string(q(1)), "1.000000");
  EXPECT_EQ(format_rate(std::nullopt), "UNDEFINED");
  EXPECT_EQ(format_rate(q(7, 10)), "7/10");
}

TEST(Rational, SafeRatioAndCounts) {
  EXPECT_FALSE(safe_ratio(q(1), q(0)).has_value());
  EXPECT_EQ(*safe_ratio(q(1), q(4)), q(1, 4));
  EXPECT_FALSE(count_ratio(0, 0).has_value());
  const Rate r = count_ratio(4, 10);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->get_num(), 2);
  EXPECT_EQ(r->get_den(), 5);
  EXPECT_EQ(abs_diff(q(1, 3), q(1, 2)), q(1, 6));
  EXPECT_DOUBLE_EQ(to_double(q(3, 4)), 0.75);
}

}  // namespace
}  // namespace paritylens
