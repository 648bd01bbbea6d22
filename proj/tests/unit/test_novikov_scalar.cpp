/*
   Copyright 2026 The novikov-gysin Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include "novikov/errors.hpp"
#include "novikov/novikov_scalar.hpp"

namespace novikov {
namespace {

NovikovScalar poly(BaseField f, std::initializer_list<int> exps, Extended cutoff = Extended::pos_inf()) {
  std::vector<Term> terms;
  for (int e : exps) terms.push_back({Exponent(e), Rational(1)});
  return NovikovScalar(f, terms, cutoff);
}

TEST(Rational, NormalizesAndCompares) {
  EXPECT_EQ(Rational(2, 4), Rational(1, 2));
  EXPECT_EQ(Rational(1, -2), Rational(-1, 2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational::parse("3/6"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("-4"), Rational(-4));
  EXPECT_EQ(Rational(7, 2).floor(), 3);
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
}

TEST(Rational, OverflowThrows) {
  const Rational big(std::int64_t{1} << 62);
  EXPECT_THROW((void)(big * big), std::overflow_error);
}

TEST(NovikovScalar, Gf2ProductTelescopes) {
  const auto a = poly(BaseField::GF2, {0, 1});
  const auto b = poly(BaseField::GF2, {0, 1, 2});
  EXPECT_EQ(nv_mul(a, b), poly(BaseField::GF2, {0, 3}));
}

TEST(NovikovScalar, InvertOnePlusT) {
  const auto a = poly(BaseField::GF2, {0, 1});
  const auto inv = nv_invert(a, Exponent(3));
  EXPECT_EQ(inv, poly(BaseField::GF2, {0, 1, 2}, Extended(Exponent(3))));
  EXPECT_TRUE(nv_mul(a, inv).congruent(NovikovScalar::one(BaseField::GF2)));
}

TEST(NovikovScalar, InvertOverRationalsMatchesGeometricSeries) {
  // 1/(2 - t) = 1/2 sum (t/2)^n
  const NovikovScalar a(BaseField::Rationals, {{Exponent(0), Rational(2)}, {Exponent(1), Rational(-1)}});
  const auto inv = nv_invert(a, Exponent(4));
  for (int n = 0; n < 4; ++n) {
    Rational expect(1, 2);
    for (int k = 0; k < n; ++k) expect = expect * Rational(1, 2);
    EXPECT_EQ(inv.coefficient(Exponent(n)), expect) << n;
  }
}

TEST(NovikovScalar, MonomialInverseIsExact) {
  const auto a = NovikovScalar::monomial(BaseField::Rationals, Exponent(3, 2), Rational(4));
  const auto inv = nv_invert(a, Exponent(1));
  EXPECT_TRUE(inv.is_exact());
  EXPECT_EQ(nv_mul(a, inv), NovikovScalar::one(BaseField::Rationals));
}

TEST(NovikovScalar, InvertZeroThrows) {
  EXPECT_THROW((void)nv_invert(NovikovScalar::zero(BaseField::GF2), Exponent(3)), NotInvertible);
}

TEST(NovikovScalar, TruncatedInputLimitsInverse) {
  const auto a = poly(BaseField::GF2, {1, 2}, Extended(Exponent(4)));
  EXPECT_THROW((void)nv_invert(a, Exponent(3)), PrecisionError);
  const auto inv = nv_invert(a, Exponent(2));
  EXPECT_TRUE(nv_mul(a, inv).truncated(Extended(Exponent(2))).congruent(NovikovScalar::one(BaseField::GF2)));
}

TEST(NovikovScalar, FieldMismatchThrows) {
  EXPECT_THROW((void)nv_add(NovikovScalar::one(BaseField::GF2), NovikovScalar::one(BaseField::Rationals)),
               FieldMismatch);
}

TEST(NovikovScalar, CutoffOfProduct) {
  const auto a = poly(BaseField::GF2, {1}, Extended(Exponent(5)));
  const auto b = poly(BaseField::GF2, {2}, Extended(Exponent(4)));
  // min(5 + 2, 4 + 1)
  EXPECT_EQ(nv_mul(a, b).cutoff(), Extended(Exponent(5)));
}

TEST(NovikovScalar, Gf2CoefficientsReduce) {
  const NovikovScalar a(BaseField::GF2, {{Exponent(0), Rational(3)}, {Exponent(0), Rational(1)}});
  EXPECT_TRUE(a.is_zero());
}

TEST(NovikovScalar, ToStringFormat) {
  EXPECT_EQ(poly(BaseField::GF2, {0, 1}, Extended(Exponent(3))).to_string(), "t^0 + t^1 + O(t^3)");
}

}  // namespace
}  // namespace novikov
