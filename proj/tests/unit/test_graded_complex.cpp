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
#include "novikov/graded_complex.hpp"
#include "oracles.hpp"

namespace novikov {
namespace {

constexpr BaseField kF = BaseField::GF2;

NovikovScalar mono(int e) { return NovikovScalar::monomial(kF, Exponent(e)); }

GradedBasis basis_of(std::initializer_list<std::pair<const char*, Exponent>> items) {
  GradedBasis b;
  for (const auto& [label, grade] : items) b.push_back({label, grade, std::nullopt});
  return b;
}

// d = G D G^{-1} with D a random matching of weight-t^e entries and G = 1 + N
// for N strictly triangular; rank d equals the number of matched pairs.
GradedComplex random_complex(std::mt19937_64& rng, BaseField field, std::size_t n, std::size_t& pairs) {
  GradedBasis b;
  for (std::size_t i = 0; i < n; ++i) b.push_back({"g" + std::to_string(i), Exponent(static_cast<int>(rng() % 5)), {}});
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  pairs = rng() % (n / 2 + 1);
  NovikovMatrix d(b, b, field);
  for (std::size_t p = 0; p < pairs; ++p) {
    const int e = static_cast<int>(rng() % 3);
    d.set(perm[2 * p + 1], perm[2 * p], NovikovScalar::monomial(field, Exponent(e, 1 + static_cast<int>(rng() % 2))));
  }
  NovikovMatrix nil(b, b, field);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng() % 3 != 0) continue;
      const Rational coeff = field == BaseField::GF2 ? Rational(1) : Rational(static_cast<int>(rng() % 5) - 2);
      nil.set(i, j, NovikovScalar::monomial(field, Exponent(static_cast<int>(rng() % 3)), coeff));
    }
  }
  const NovikovMatrix id = NovikovMatrix::identity(b, field);
  NovikovMatrix g = id + nil;
  NovikovMatrix g_inv = id;
  NovikovMatrix power = id;
  for (std::size_t k = 1; k < n; ++k) {
    power = (-nil).compose(power);
    g_inv = g_inv + power;
  }
  return {b, g.compose(d).compose(g_inv)};
}

TEST(CheckDSquared, ZeroDifferential) {
  GradedComplex c(basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}}), kF);
  EXPECT_TRUE(check_d_squared(c, Exponent(5)).ok);
}

TEST(CheckDSquared, SwapIsNotADifferential) {
  GradedComplex c(basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}}), kF);
  c.differential.set("y", "x", mono(0));
  c.differential.set("x", "y", mono(0));
  const auto report = check_d_squared(c, Exponent(5));
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.offending.size(), 2U);
}

TEST(GapCheck, Examples) {
  const auto i = OrderInterval::half_open(Extended(Exponent(1)), Extended(Exponent(2)));
  EXPECT_TRUE(gap_check(basis_of({{"a", Exponent(0)}, {"b", Exponent(0)}, {"c", Exponent(5)}}), i));
  EXPECT_FALSE(gap_check(basis_of({{"a", Exponent(0)}, {"b", Exponent(3, 2)}}), i));
  EXPECT_TRUE(gap_check(basis_of({{"a", Exponent(0)}, {"b", Exponent(3)}, {"c", Exponent(6)}}), i));
}

TEST(GapCheck, BoundaryPairsReported) {
  const auto i = OrderInterval::half_open(Extended(Exponent(1)), Extended(Exponent(2)));
  const auto r = gap_report({Exponent(0), Exponent(2)}, i);
  EXPECT_TRUE(r.ok);
  ASSERT_EQ(r.boundary_pairs.size(), 1U);
  const auto closed_lo = gap_report({Exponent(0), Exponent(1)}, i);
  EXPECT_FALSE(closed_lo.ok);
  const auto open = gap_report({Exponent(0), Exponent(1)}, OrderInterval::open(Extended(Exponent(1)), Extended(Exponent(2))));
  EXPECT_TRUE(open.ok);
}

TEST(MapOrder, Examples) {
  const auto src = basis_of({{"a", Exponent(0)}});
  NovikovMatrix f(src, basis_of({{"b", Exponent(0)}}), kF);
  f.set(0, 0, mono(2));
  auto o = map_order(f);
  EXPECT_EQ(o.order, OrderInterval::closed(Extended(Exponent(2)), Extended(Exponent(2))));
  EXPECT_TRUE(o.positive);

  f.set(0, 0, mono(-1));
  EXPECT_FALSE(map_order(f).positive);

  NovikovMatrix g(src, basis_of({{"p", Exponent(3)}, {"q", Exponent(0)}}), kF);
  g.set(0, 0, mono(0));
  g.set(1, 0, mono(4));
  o = map_order(g);
  EXPECT_EQ(o.order, OrderInterval::closed(Extended(Exponent(3)), Extended(Exponent(4))));
  EXPECT_TRUE(o.positive);

  const auto empty = map_order(NovikovMatrix(src, src, kF));
  EXPECT_TRUE(empty.positive);
  EXPECT_EQ(empty.order.lo, Extended::pos_inf());
}

TEST(MapOrder, CompositionLowerBound) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    GradedBasis a, b, c;
    for (int i = 0; i < 3; ++i) {
      a.push_back({"a" + std::to_string(i), Exponent(static_cast<int>(rng() % 4)), {}});
      b.push_back({"b" + std::to_string(i), Exponent(static_cast<int>(rng() % 4)), {}});
      c.push_back({"c" + std::to_string(i), Exponent(static_cast<int>(rng() % 4)), {}});
    }
    NovikovMatrix g(a, b, kF);
    NovikovMatrix f(b, c, kF);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        if (rng() % 2) g.set(i, j, mono(static_cast<int>(rng() % 4)));
        if (rng() % 2) f.set(i, j, mono(static_cast<int>(rng() % 4)));
      }
    }
    const auto fg = f.compose(g);
    if (fg.is_zero() || f.is_zero() || g.is_zero()) continue;
    EXPECT_GE(map_order(fg).order.lo, map_order(f).order.lo + map_order(g).order.lo);
  }
}

TEST(Split, ByShift) {
  const auto b = basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}});
  GradedComplex c(b, kF);
  c.differential.set("y", "x", NovikovScalar(kF, {{Exponent(0), Rational(1)}, {Exponent(3), Rational(1)}}));
  const auto s = split_differential(c, Exponent(1));
  EXPECT_EQ(s.low.at("y", "x"), mono(0));
  EXPECT_EQ(s.high.at("y", "x"), mono(3));
  EXPECT_EQ(s.low + s.high, c.differential);

  c.differential.set("y", "x", NovikovScalar::monomial(kF, Exponent(3, 2)));
  EXPECT_THROW((void)split_differential(c, Exponent(1)), GapViolation);
}

TEST(Homology, Examples) {
  const auto b = basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}, {"z", Exponent(1)}});
  GradedComplex zero(b, kF);
  EXPECT_EQ(homology_rank(zero, Exponent(4)).rank, 3U);

  GradedComplex c(basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}}), kF);
  c.differential.set("y", "x", mono(1));
  const auto r = homology_rank(c, Exponent(4));
  EXPECT_EQ(r.rank, 0U);
  EXPECT_TRUE(r.exact);
}

TEST(Homology, RejectsNonDifferentialAndIntegers) {
  GradedComplex c(basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}}), kF);
  c.differential.set("y", "x", mono(0));
  c.differential.set("x", "y", mono(0));
  EXPECT_THROW((void)homology_rank(c, Exponent(4)), NotADifferential);
  GradedComplex z(basis_of({{"x", Exponent(0)}}), BaseField::Integers);
  EXPECT_THROW((void)homology_rank(z, Exponent(4)), NotInvertible);
}

TEST(Homology, RepresentativesAreCyclesAndIndependent) {
  // x -> y + z; ker spanned by y, z mod image: one class
  GradedComplex c(basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}, {"z", Exponent(0)}}), kF);
  c.differential.set("y", "x", mono(0));
  c.differential.set("z", "x", mono(1));
  const auto r = homology_rank(c, Exponent(6));
  ASSERT_EQ(r.rank, 1U);
  ASSERT_EQ(r.representatives.size(), 1U);
  for (const auto& [label, coeff] : r.representatives[0]) EXPECT_NE(label, "x");
}

TEST(Homology, TruncationFlagsPrecision) {
  GradedComplex c(basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}}), kF);
  c.differential.set("y", "x", mono(5));
  const auto r = homology_rank(c, Exponent(4));
  EXPECT_EQ(r.rank, 2U);
  EXPECT_FALSE(r.exact);
}

TEST(Homology, MatchesGenericPointOracle) {
  std::mt19937_64 rng(2024);
  for (BaseField field : {BaseField::GF2, BaseField::Rationals}) {
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t pairs = 0;
      const auto c = random_complex(rng, field, 2 + rng() % 7, pairs);
      const Exponent cutoff(field == BaseField::GF2 ? 40 : 12);
      const auto r = homology_rank(c, cutoff);
      EXPECT_EQ(r.rank, c.size() - 2 * pairs);
      EXPECT_EQ(r.rank, oracle::generic_homology_rank(c, trial));
      EXPECT_EQ(r.representatives.size(), r.rank);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        HomologyOptions opt;
        opt.tie_break_seed = seed;
        EXPECT_EQ(homology_rank(c, cutoff, opt).rank, r.rank);
      }
    }
  }
}

TEST(Homology, RepresentativeClassesSpanHomology) {
  // Adding the representatives as extra killed directions must make the
  // complex acyclic: cone of the inclusion of the representatives.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t pairs = 0;
    const auto c = random_complex(rng, kF, 2 + rng() % 6, pairs);
    const auto r = homology_rank(c, Exponent(40));
    GradedBasis hb;
    for (std::size_t k = 0; k < r.rank; ++k) hb.push_back({"h" + std::to_string(k), Exponent(0), {}});
    GradedComplex h(hb, kF);
    NovikovMatrix inc(hb, c.basis, kF);
    for (std::size_t k = 0; k < r.rank; ++k) {
      for (const auto& [label, coeff] : r.representatives[k]) inc.set(label, hb[k].label, coeff);
    }
    EXPECT_TRUE(is_quasi_iso(h, c, inc, Exponent(40)));
  }
}

TEST(MappingCone, Examples) {
  std::mt19937_64 rng(5);
  std::size_t pairs = 0;
  const auto a = random_complex(rng, kF, 5, pairs);
  EXPECT_TRUE(is_quasi_iso(a, a, NovikovMatrix::identity(a.basis, kF), Exponent(20)));

  const auto ha = homology_rank(a, Exponent(20)).rank;
  NovikovMatrix zero(a.basis, a.basis, kF);
  EXPECT_EQ(homology_rank(mapping_cone(a, a, zero, Exponent(20)), Exponent(20)).rank, 2 * ha);

  GradedComplex one(basis_of({{"e", Exponent(0)}}), kF);
  EXPECT_TRUE(is_quasi_iso(one, one, NovikovMatrix::scalar(one.basis, kF, mono(1)), Exponent(5)));
}

TEST(MappingCone, RejectsNonChainMap) {
  GradedComplex a(basis_of({{"x", Exponent(0)}, {"y", Exponent(0)}}), kF);
  a.differential.set("y", "x", mono(0));
  GradedComplex b(basis_of({{"u", Exponent(0)}}), kF);
  NovikovMatrix f(a.basis, b.basis, kF);
  f.set("u", "y", mono(0));
  EXPECT_THROW((void)mapping_cone(a, b, f, Exponent(5)), NotAChainMap);
}

TEST(MappingCone, EulerParity) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t pairs = 0;
    const auto a = random_complex(rng, BaseField::Rationals, 4, pairs);
    const auto f = NovikovMatrix::scalar(a.basis, BaseField::Rationals,
                                         NovikovScalar::monomial(BaseField::Rationals, Exponent(1), Rational(3)));
    const auto cone = mapping_cone(a, a, f, Exponent(20));
    const auto rc = homology_rank(cone, Exponent(20)).rank;
    EXPECT_EQ(rc % 2, (2 * homology_rank(a, Exponent(20)).rank) % 2);
    EXPECT_EQ(rc, 0U);
  }
}

}  // namespace
}  // namespace novikov
