// Copyright 2026 The bpmeasure Authors
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

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include <random>

#include "bpmeasure/error.hpp"
#include "bpmeasure/rational.hpp"

namespace bpm {
namespace {

using Oracle = boost::multiprecision::cpp_rational;

Oracle oracle(const Rational& r) { return Oracle(r.num(), r.den()); }

bool same(const Rational& r, const Oracle& o) {
  return boost::multiprecision::numerator(o) == r.num() && boost::multiprecision::denominator(o) == r.den();
}

TEST(Rational, NormalizesSignAndGcd) {
  Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(Rational(0, -7), Rational(0));
}

TEST(Rational, ZeroDenominatorThrows) { EXPECT_THROW(Rational(1, 0), ArithmeticError); }

TEST(Rational, DivisionByZeroThrows) { EXPECT_THROW(Rational(1) / Rational(0), ArithmeticError); }

TEST(Rational, OverflowThrows) {
  Rational big(std::numeric_limits<std::int64_t>::max());
  EXPECT_THROW(big + Rational(1), ArithmeticError);
  EXPECT_THROW(big * Rational(2), ArithmeticError);
}

TEST(Rational, RoundHalfEven) {
  EXPECT_EQ(Rational(1, 8).round_half_even(2), Rational(12, 100));   // 0.125 -> 0.12
  EXPECT_EQ(Rational(3, 8).round_half_even(2), Rational(38, 100));   // 0.375 -> 0.38
  EXPECT_EQ(Rational(-1, 8).round_half_even(2), Rational(-12, 100));
  EXPECT_EQ(Rational(5, 2).round_to_integer(), 2);
  EXPECT_EQ(Rational(7, 2).round_to_integer(), 4);
  EXPECT_EQ(Rational(-5, 2).round_to_integer(), -2);
  EXPECT_EQ(Rational(-7, 3).floor(), -3);
}

TEST(Rational, TextForms) {
  EXPECT_EQ(Rational(1, 10).to_string(), "0.1");
  EXPECT_EQ(Rational(-13, 4).to_string(), "-3.25");
  EXPECT_EQ(Rational(1, 3).to_string(), "1/3");
  EXPECT_EQ(Rational(29, 360).to_fixed(2), "0.08");
  EXPECT_EQ(Rational(1, 10).to_fixed(2), "0.10");
  EXPECT_EQ(Rational(-1, 200).to_fixed(2), "0.00");
  EXPECT_EQ(Rational(5).to_fixed(0), "5");
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("3.25"), Rational(13, 4));
  EXPECT_EQ(Rational::parse("-12"), Rational(-12));
  EXPECT_EQ(Rational::parse("1/3"), Rational(1, 3));
  EXPECT_EQ(Rational::parse(".5"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("."), std::nullopt);
  EXPECT_EQ(Rational::parse("1e3"), std::nullopt);
  EXPECT_EQ(Rational::parse("1/0"), std::nullopt);
  EXPECT_EQ(Rational::parse(""), std::nullopt);
  EXPECT_EQ(Rational::parse("99999999999999999999"), std::nullopt);
}

TEST(RationalProperty, ArithmeticMatchesBigRationalOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000, 1'000'000);
  std::uniform_int_distribution<std::int64_t> den(1, 10'000);
  for (int i = 0; i < 5000; ++i) {
    Rational a(num(rng), den(rng));
    Rational b(num(rng), den(rng));
    EXPECT_TRUE(same(a + b, oracle(a) + oracle(b)));
    EXPECT_TRUE(same(a - b, oracle(a) - oracle(b)));
    EXPECT_TRUE(same(a * b, oracle(a) * oracle(b)));
    if (!b.is_zero()) {
      EXPECT_TRUE(same(a / b, oracle(a) / oracle(b)));
    }
    EXPECT_EQ(a < b, oracle(a) < oracle(b));
  }
}

TEST(RationalProperty, ToStringParsesBack) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000'000, 1'000'000'000);
  std::uniform_int_distribution<int> pow(0, 6);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t d = 1;
    for (int k = pow(rng); k > 0; --k) d *= (i % 2 == 0) ? 10 : 3;
    Rational r(num(rng), d);
    EXPECT_EQ(Rational::parse(r.to_string()), r) << r.to_string();
  }
}

}  // namespace
}  // namespace bpm
