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

#include <random>

#include "novikov/errors.hpp"
#include "novikov/morse_floer_model.hpp"
#include "novikov/quantum_gysin.hpp"

namespace novikov::quantum {
namespace {

constexpr BaseField kF = BaseField::GF2;
NovikovScalar t_pow(const Exponent& e) { return NovikovScalar::monomial(kF, e); }

// t^{-1} H^{n-1} written out by hand: e_0 -> t^{-1} e_{n-1}, e_i -> e_{i-1}.
// Entrywise agreement modulo t^cutoff, with every entry known at least that far.
void expect_congruent(const NovikovMatrix& a, const NovikovMatrix& b, const Exponent& cutoff) {
  ASSERT_EQ(a.source().size(), b.source().size());
  ASSERT_EQ(a.target().size(), b.target().size());
  for (std::size_t i = 0; i < a.target().size(); ++i) {
    for (std::size_t j = 0; j < a.source().size(); ++j) {
      const auto x = a.at(i, j);
      const auto y = b.at(i, j);
      EXPECT_TRUE(x.congruent(y)) << i << "," << j << ": " << x.to_string() << " vs " << y.to_string();
      EXPECT_GE(min(x.cutoff(), y.cutoff()), Extended(cutoff)) << i << "," << j;
    }
  }
}

NovikovMatrix expected_inverse(const QuantumModule& q) {
  NovikovMatrix m(q.basis, q.basis, kF);
  m.set(static_cast<std::size_t>(q.n - 1), 0, t_pow(Exponent(-1)));
  for (int i = 1; i < q.n; ++i) m.set(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(i), t_pow(Exponent(0)));
  return m;
}

TEST(CpnCap, TwoByTwo) {
  const auto q = cpn_cap(2);
  EXPECT_EQ(q.H.at("e0", "e1"), t_pow(Exponent(1)));
  EXPECT_EQ(q.H.at("e1", "e0"), t_pow(Exponent(0)));
  EXPECT_TRUE(q.H.at("e0", "e0").is_zero());
  EXPECT_EQ(q.basis[0].hdeg, 2);
  EXPECT_EQ(q.basis[1].hdeg, 0);
}

TEST(CpnCap, PowerRelationAndCyclicOrbit) {
  for (int n = 2; n <= 8; ++n) {
    const auto q = cpn_cap(n);
    const auto p = matrix_power(q.H, n);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
        EXPECT_EQ(p.at(i, j), i == j ? t_pow(Exponent(1)) : NovikovScalar::zero(kF));
      }
    }
  }
  EXPECT_THROW((void)cpn_cap(1), InvalidInput);
}

TEST(Invertibility, CapOperatorInverse) {
  for (int n = 2; n <= 6; ++n) {
    const auto q = cpn_cap(n);
    const auto r = invertibility_check(cap_action(q), Exponent(10));
    ASSERT_TRUE(r.invertible);
    expect_congruent(*r.inverse, expected_inverse(q), Exponent(9));
    expect_congruent(q.H.compose(*r.inverse), NovikovMatrix::identity(q.basis, kF), Exponent(10));
    EXPECT_EQ(gysin_cone_prediction(cap_action(q), Exponent(10)), 0U);
  }
}

TEST(Invertibility, ZeroOperator) {
  const auto q = cpn_cap(3);
  EulerAction e{GradedComplex(q.basis, kF), NovikovMatrix(q.basis, q.basis, kF), -2};
  const auto r = invertibility_check(e, Exponent(10));
  EXPECT_FALSE(r.invertible);
  EXPECT_FALSE(r.kernel_witness.empty());
  EXPECT_EQ(gysin_cone_prediction(e, Exponent(10)), 6U);
}

TEST(Invertibility, ScalarMonomial) {
  const auto q = cpn_cap(3);
  EulerAction e{GradedComplex(q.basis, kF), NovikovMatrix::scalar(q.basis, kF, t_pow(Exponent(5, 2))), 0};
  const auto r = invertibility_check(e, Exponent(10));
  ASSERT_TRUE(r.invertible);
  expect_congruent(*r.inverse, NovikovMatrix::scalar(q.basis, kF, t_pow(Exponent(-5, 2))), Exponent(10));
}

TEST(Borderline, Examples) {
  const auto q = cpn_cap(3);
  const auto e = cap_action(q);
  EXPECT_EQ(borderline_operator(e, 0, Exponent(1), 2).op, e.op);

  EulerAction zero{GradedComplex(q.basis, kF), NovikovMatrix(q.basis, q.basis, kF), -3};
  const auto bz = borderline_operator(zero, 1, Exponent(1, 2), 2);
  EXPECT_EQ(bz.op, NovikovMatrix::scalar(q.basis, kF, t_pow(Exponent(3, 2))));
  EXPECT_EQ(gysin_cone_prediction(bz, Exponent(10)), 0U);

  // H + t^{3 lambda} id stays invertible for generic lambda
  for (const Exponent lambda : {Exponent(1, 7), Exponent(2, 5), Exponent(3)}) {
    const auto b = borderline_operator(e, 1, lambda, 2);
    EXPECT_TRUE(invertibility_check(b, Exponent(12)).invertible) << lambda.to_string();
    EXPECT_EQ(gysin_cone_prediction(b, Exponent(12)), 0U);
  }
  EXPECT_THROW((void)borderline_operator(e, 1, Exponent(0), 2), InvalidInput);
}

TEST(Invertibility, AgreesWithConeAcyclicity) {
  // E = P D P^{-1}, D diagonal with monomial or zero entries, P unipotent.
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng() % 4;
    GradedBasis b;
    for (std::size_t i = 0; i < n; ++i) b.push_back({"g" + std::to_string(i), Exponent(0), std::nullopt});
    NovikovMatrix d(b, b, kF);
    bool singular = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng() % 4 == 0) {
        singular = true;
      } else {
        d.set(i, i, t_pow(Exponent(static_cast<int>(rng() % 5) - 2)));
      }
    }
    NovikovMatrix nil(b, b, kF);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (rng() % 2) nil.set(i, j, t_pow(Exponent(static_cast<int>(rng() % 3))));
      }
    }
    const auto id = NovikovMatrix::identity(b, kF);
    NovikovMatrix inv = id;
    NovikovMatrix power = id;
    for (std::size_t k = 1; k < n; ++k) {
      power = nil.compose(power);
      inv = inv + power;
    }
    const auto op = (id + nil).compose(d).compose(inv);
    const EulerAction e{GradedComplex(b, kF), op, 0};
    const bool invertible = invertibility_check(e, Exponent(20)).invertible;
    EXPECT_EQ(invertible, !singular);
    EXPECT_EQ(gysin_cone_prediction(e, Exponent(20)) == 0, invertible);
    const EulerAction plain{GradedComplex(b, kF), d, 0};
    EXPECT_EQ(gysin_cone_prediction(e, Exponent(20)), gysin_cone_prediction(plain, Exponent(20)));
  }
}

TEST(Prediction, ZeroMapDoublesHomology) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cf = morse::random_floer_complex(seed, 3 + seed % 5, kF);
    const EulerAction e{cf, NovikovMatrix(cf.basis, cf.basis, kF), -2};
    EXPECT_EQ(gysin_cone_prediction(e, Exponent(12)), 2 * homology_rank(cf, Exponent(12)).rank);
  }
}

TEST(Prediction, TOnRankOne) {
  GradedBasis b;
  b.push_back({"x", Exponent(0), std::nullopt});
  const EulerAction e{GradedComplex(b, kF), NovikovMatrix::scalar(b, kF, t_pow(Exponent(1))), 0};
  EXPECT_EQ(gysin_cone_prediction(e, Exponent(10)), 0U);
}

TEST(MakeAction, RejectsNonChainMaps) {
  GradedBasis b;
  b.push_back({"x", Exponent(0), std::nullopt});
  b.push_back({"y", Exponent(0), std::nullopt});
  GradedComplex c(b, kF);
  c.differential.set("y", "x", t_pow(Exponent(0)));
  NovikovMatrix op(b, b, kF);
  op.set("x", "x", t_pow(Exponent(0)));
  EXPECT_THROW((void)make_action(c, op, 0, Exponent(5)), NotAChainMap);
  EXPECT_NO_THROW((void)make_action(c, NovikovMatrix::identity(b, kF), 0, Exponent(5)));
}

}  // namespace
}  // namespace novikov::quantum
