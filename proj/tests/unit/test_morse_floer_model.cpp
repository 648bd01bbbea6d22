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
#include "novikov/morse_floer_model.hpp"
#include "oracles.hpp"

namespace novikov::morse {
namespace {

const Exponent kEps(1);
const Exponent kCut(12);

FixedPointSet points(int n) {
  GeneratorConfig c;
  c.fix_count = n;
  return make_fixed_points(c);
}

TEST(BuildIntersection, SinglePoint) {
  const auto inst = build_intersection(points(1), MorseFiber{2});
  ASSERT_EQ(inst.A_dprime.size(), 2U);
  EXPECT_EQ(inst.A_dprime[0].label, "p0.min");
  EXPECT_EQ(inst.A_dprime[1].label, "p0.max");
  EXPECT_EQ(inst.h0(0, 0), Rational(1));
  EXPECT_EQ(inst.c0(1, 0), Rational(1));
}

TEST(BuildIntersection, EmptyAndTwoToOne) {
  const auto empty = build_intersection(points(0), MorseFiber{1});
  EXPECT_EQ(empty.A_dprime.size(), 0U);
  const auto r = double_cone_check(synthesize_cone_data(empty, kEps, 1), kCut);
  EXPECT_TRUE(r.conclusion);
  for (int n = 1; n <= 6; ++n) {
    const auto inst = build_intersection(points(n), MorseFiber{3});
    EXPECT_EQ(inst.A_dprime.size(), 2 * inst.A.size());
    BaseMatrix m(2 * n, 2 * n, BaseField::GF2);
    for (int r2 = 0; r2 < 2 * n; ++r2) {
      for (int k = 0; k < n; ++k) {
        m(r2, k) = inst.h0(r2, k);
        m(r2, n + k) = inst.c0(r2, k);
      }
    }
    EXPECT_EQ(m.rank(), static_cast<std::size_t>(2 * n));
  }
}

TEST(BuildIntersection, DuplicateLabelsRejected) {
  FixedPointSet fix;
  fix.points = {{"p", std::nullopt}, {"p", std::nullopt}};
  EXPECT_THROW((void)build_intersection(fix, MorseFiber{1}), InvalidInput);
}

TEST(Synthesis, RichnessZeroHasNoHighParts) {
  const auto inst = build_intersection(points(3), MorseFiber{2});
  const auto d = synthesize_cone_data(inst, kEps, 5, {0, Mutation::None});
  EXPECT_TRUE(d.C.differential.is_zero());
  EXPECT_TRUE(d.C_prime.differential.is_zero());
  EXPECT_TRUE(d.C_dprime.differential.is_zero());
  EXPECT_TRUE(d.b.is_zero());
  EXPECT_EQ(d.c.entries().size(), 3U);
  EXPECT_EQ(d.h.entries().size(), 3U);
}

TEST(Synthesis, SeededInstancePasses) {
  const auto inst = build_intersection(points(3), MorseFiber{2});
  const auto d = synthesize_cone_data(inst, kEps, 42, {3, Mutation::None});
  const auto r = double_cone_check(d, kCut);
  EXPECT_TRUE(r.report.all_pass());
  EXPECT_EQ(r.cone_rank, 0U);
  EXPECT_EQ(oracle::generic_homology_rank(double_cone(d)), 0U);
}

TEST(Synthesis, IdentitiesHoldExactly) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto d = generate_cone_data(random_config(seed, Mutation::None, kEps));
    // exact: check far beyond any exponent present
    const Exponent big(1000);
    EXPECT_TRUE(check_d_squared(d.C, big).ok);
    EXPECT_TRUE(check_d_squared(d.C_prime, big).ok);
    EXPECT_TRUE(check_d_squared(d.C_dprime, big).ok);
    EXPECT_NO_THROW(require_cone_structure(d, big));
  }
}

TEST(Synthesis, ExtractLowRecoversGeneratorMaps) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto cfg = random_config(seed, Mutation::None, kEps);
    const auto inst = build_intersection(make_fixed_points(cfg), MorseFiber{cfg.fiber_dim});
    const auto d = synthesize_cone_data(inst, kEps, seed, {cfg.richness, Mutation::None});
    EXPECT_EQ(extract_low(d.c, kEps), inst.c0);
    EXPECT_EQ(extract_low(d.h, kEps), inst.h0);
  }
}

TEST(Synthesis, GeneratedInstancesMatchOracle) {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const auto d = generate_cone_data(random_config(seed, Mutation::None, kEps));
    const auto r = double_cone_check(d, kCut);
    EXPECT_TRUE(r.report.all_pass()) << seed;
    EXPECT_EQ(r.cone_rank, 0U);
    EXPECT_EQ(oracle::generic_homology_rank(double_cone(d), seed), 0U);
  }
}

TEST(Synthesis, Deterministic) {
  const auto cfg = random_config(7, Mutation::None, kEps);
  const auto a = generate_cone_data(cfg);
  const auto b = generate_cone_data(cfg);
  EXPECT_EQ(a.C_dprime.differential, b.C_dprime.differential);
  EXPECT_EQ(a.h, b.h);
}

class MutationTest : public ::testing::TestWithParam<std::pair<Mutation, const char*>> {};

TEST_P(MutationTest, TriggersExactlyTheTarget) {
  const auto [mutation, name] = GetParam();
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto d = generate_cone_data(random_config(seed, mutation, kEps));
    const auto r = double_cone_check(d, kCut);
    EXPECT_EQ(r.report.failures(), std::vector<std::string>{name}) << seed;
    EXPECT_FALSE(r.conclusion);
  }
}

INSTANTIATE_TEST_SUITE_P(All, MutationTest,
                         ::testing::Values(std::make_pair(Mutation::Low2, "LOW2"), std::make_pair(Mutation::Gap, "GAP"),
                                           std::make_pair(Mutation::Pos, "POS")),
                         [](const auto& info) { return std::string(info.param.second); });

TEST(Mutation, Low2WithoutHighPartsHasHomology) {
  const auto inst = build_intersection(points(2), MorseFiber{1});
  const auto d = synthesize_cone_data(inst, kEps, 3, {0, Mutation::Low2});
  const auto r = double_cone_check(d, kCut);
  EXPECT_EQ(r.cone_rank, 2U);
  EXPECT_EQ(oracle::generic_homology_rank(double_cone(d)), 2U);
}

TEST(Mutation, PosNeedsActions) {
  GeneratorConfig c;
  c.fix_count = 2;
  c.mutation = Mutation::Pos;
  EXPECT_THROW((void)generate_cone_data(c), InvalidInput);
}

TEST(Mutation, ParseRoundTrip) {
  for (auto m : {Mutation::None, Mutation::Low2, Mutation::Gap, Mutation::Pos}) EXPECT_EQ(parse_mutation(to_string(m)), m);
  EXPECT_THROW((void)parse_mutation("bogus"), InvalidInput);
}

TEST(Pipeline, SinglePointRichnessZero) {
  const auto inst = build_intersection(points(1), MorseFiber{1});
  const auto r = run_theorem_pipeline(inst, kEps, kCut, 0, {0, Mutation::None});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.rank_C, 1U);
  EXPECT_EQ(r.rank_cone_b, 2U);
  EXPECT_EQ(r.rank_C_dprime, 2U);
}

TEST(Pipeline, RandomInstancesPass) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto cfg = random_config(seed, Mutation::None, kEps);
    const auto inst = build_intersection(make_fixed_points(cfg), MorseFiber{cfg.fiber_dim});
    const auto r = run_theorem_pipeline(inst, kEps, kCut, seed, {cfg.richness, Mutation::None});
    EXPECT_TRUE(r.pass) << seed;
  }
}

TEST(RandomFloerComplex, RankMatchesOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = random_floer_complex(seed, 2 + seed % 7, BaseField::GF2);
    EXPECT_TRUE(check_d_squared(c, Exponent(100)).ok);
    EXPECT_EQ(homology_rank(c, kCut).rank, oracle::generic_homology_rank(c, seed));
  }
}

}  // namespace
}  // namespace novikov::morse
