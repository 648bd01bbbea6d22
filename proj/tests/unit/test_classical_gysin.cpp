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

#include <numeric>
#include <random>
#include <sstream>

#include "novikov/classical_gysin.hpp"
#include "novikov/errors.hpp"

namespace novikov::classical {
namespace {

constexpr BaseField kZ = BaseField::Integers;
constexpr BaseField kF2 = BaseField::GF2;

// ---- independent oracles: determinantal divisors and rank mod a prime

__int128 det(std::vector<std::vector<__int128>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  __int128 out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<__int128>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<__int128> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[r][j]);
      }
      minor.push_back(row);
    }
    const __int128 sub = det(minor);
    out += (c % 2 == 0 ? 1 : -1) * m[0][c] * sub;
  }
  return out;
}

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// gcd of all k x k minors.
std::int64_t minor_gcd(const IntMatrix& a, std::size_t k) {
  std::vector<std::vector<std::size_t>> rs;
  std::vector<std::vector<std::size_t>> cs;
  std::vector<std::size_t> cur;
  subsets(a.rows(), k, 0, cur, rs);
  subsets(a.cols(), k, 0, cur, cs);
  std::int64_t g = 0;
  for (const auto& r : rs) {
    for (const auto& c : cs) {
      std::vector<std::vector<__int128>> m(k, std::vector<__int128>(k));
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = a(r[i], c[j]);
      }
      __int128 d = det(m);
      if (d < 0) d = -d;
      g = std::gcd(g, static_cast<std::int64_t>(d));
    }
  }
  return g;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, BaseField ring) {
  IntMatrix m(rows, cols, ring);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng() % 3 != 0) m.set(r, c, static_cast<std::int64_t>(rng() % 13) - 6);
    }
  }
  return m;
}

TEST(SmithForm, FactorizationAndDeterminantalDivisors) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t rows = 1 + rng() % 4;
    const std::size_t cols = 1 + rng() % 4;
    const IntMatrix a = random_matrix(rng, rows, cols, kZ);
    const SmithForm s = smith_normal_form(a);
    EXPECT_EQ(s.U * a * s.V, s.D);
    EXPECT_EQ(s.U * s.U_inv, IntMatrix::identity(rows, kZ));
    const auto f = s.invariant_factors();
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_EQ(f[i] % f[i - 1], 0);
    std::int64_t prefix = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
      const std::int64_t g = minor_gcd(a, k);
      if (k <= f.size()) {
        prefix *= f[k - 1];
        EXPECT_EQ(prefix, g) << "k=" << k;
      } else {
        EXPECT_EQ(g, 0) << "k=" << k;
      }
    }
  }
}

TEST(SmithForm, GF2) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix a = random_matrix(rng, 1 + rng() % 5, 1 + rng() % 5, kF2);
    const SmithForm s = smith_normal_form(a);
    EXPECT_EQ(s.U * a * s.V, s.D);
    EXPECT_EQ(s.U * s.U_inv, IntMatrix::identity(a.rows(), kF2));
    for (const auto f : s.invariant_factors()) EXPECT_EQ(f, 1);
  }
}

TEST(IntegerSolve, SolutionsAndLattices) {
  IntMatrix a(2, 2, kZ);
  a.set(0, 0, 2);
  a.set(1, 1, 3);
  EXPECT_FALSE(solve(a, {1, 0}).has_value());
  const auto x = solve(a, {4, 9});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(a.apply(*x), (std::vector<std::int64_t>{4, 9}));
  IntMatrix sub(2, 1, kZ);
  sub.set(0, 0, 6);
  sub.set(1, 0, 3);
  EXPECT_TRUE(lattice_contains(a, sub));
  EXPECT_FALSE(lattice_contains(sub, a));

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 5, kZ);
    const IntMatrix k = kernel_basis(m);
    EXPECT_TRUE((m * k).is_zero());
    EXPECT_EQ(k.cols(), m.cols() - smith_normal_form(m).rank);
  }
}

TEST(CWComplex, RejectsBadBoundary) {
  CWComplex c(kZ, {{"v", 0}, {"e", 1}, {"f", 2}});
  c.add_boundary("f", "e", 1);
  c.add_boundary("e", "v", 1);
  EXPECT_THROW(c.validate(), NotADifferential);
  EXPECT_THROW(c.add_boundary("f", "v", 1), InvalidInput);
}

TEST(Homology, RealProjectivePlaneAndSpace) {
  // RP^3 with one cell per dimension: d2 = 2, d1 = d3 = 0.
  CWComplex rp(kZ, {{"c0", 0}, {"c1", 1}, {"c2", 2}, {"c3", 3}});
  rp.add_boundary("c2", "c1", 2);
  const auto h = homology(rp);
  ASSERT_EQ(h.size(), 4U);
  EXPECT_EQ(h[0].to_string(kZ), "Z");
  EXPECT_EQ(h[1].to_string(kZ), "Z/2");
  EXPECT_EQ(h[2].to_string(kZ), "0");
  EXPECT_EQ(h[3].to_string(kZ), "Z");
}

TEST(Models, EulerCochains) {
  const auto euler_value = [](const SphereBundleModel& m) {
    const std::string top = m.base.cells(m.fiber_dim + 1).front();
    return evaluate(m.base, m.euler, top);
  };
  EXPECT_EQ(euler_value(product_bundle("S2", 1, kZ)), 0);
  EXPECT_EQ(std::llabs(euler_value(hopf_s1(kZ))), 1);
  EXPECT_EQ(std::llabs(euler_value(hopf_s3(kZ))), 1);
  // Euler characteristic of S^2.
  EXPECT_EQ(std::llabs(euler_value(unit_tangent_s2(kZ))), 2);
  EXPECT_EQ(euler_value(unit_tangent_s2(kF2)), 0);
  EXPECT_EQ(reduce_mod2(unit_tangent_s2(kZ)).euler, unit_tangent_s2(kF2).euler);
}

TEST(Models, AngularIdentityHoldsExactly) {
  for (const char* kind : {"hopf_s1", "hopf_s3", "unit_tangent_s2", "product:S2:1", "product:T2:1", "product:S3:2"}) {
    for (const auto ring : {kZ, kF2}) {
      const auto m = build_model(kind, ring);
      EXPECT_EQ(coboundary(m.total, m.angular), pullback(m.rho_push, m.euler)) << kind;
      std::int64_t on_fiber = 0;
      for (std::size_t i = 0; i < m.fiber_cycle.size(); ++i) on_fiber += m.angular.values[i] * m.fiber_cycle[i];
      EXPECT_EQ(normalize_entry(ring, on_fiber), 1) << kind;
    }
  }
}

TEST(Models, EulerClassIndependentOfExtension) {
  for (const char* kind : {"hopf_s1", "hopf_s3", "unit_tangent_s2", "product:S2:1", "product:S4:3"}) {
    const auto m = build_model(kind, kZ);
    for (const std::int64_t variant : {1, -1, 3}) {
      const auto tr = euler_from_transgression(m, variant);
      EXPECT_TRUE(cohomologous(m.base, tr.euler, m.euler)) << kind;
      EXPECT_EQ(coboundary(m.total, tr.angular), pullback(m.rho_push, tr.euler));
    }
  }
}

TEST(Models, TransgressionObstruction) {
  auto m = hopf_s1(kZ);
  m.fiber_cycle.assign(m.fiber_cycle.size(), 2);
  EXPECT_THROW((void)euler_from_transgression(m), Error);
}

TEST(Models, TotalHomology) {
  const auto groups = [](const SphereBundleModel& m) {
    std::vector<std::string> out;
    for (const auto& h : homology(m.total)) out.push_back(h.to_string(m.ring));
    return out;
  };
  EXPECT_EQ(groups(hopf_s1(kZ)), (std::vector<std::string>{"Z", "0", "0", "Z"}));
  EXPECT_EQ(groups(hopf_s3(kZ)), (std::vector<std::string>{"Z", "0", "0", "0", "0", "0", "0", "Z"}));
  EXPECT_EQ(groups(unit_tangent_s2(kZ)), (std::vector<std::string>{"Z", "Z/2", "0", "Z"}));
  // Over GF2 the unit tangent sequence splits.
  EXPECT_EQ(groups(unit_tangent_s2(kF2)), (std::vector<std::string>{"F2", "F2", "F2", "F2"}));
  EXPECT_EQ(groups(product_bundle("T2", 1, kZ)), (std::vector<std::string>{"Z", "Z^3", "Z^3", "Z"}));
}

TEST(Models, TorsionMatchesMinorOracle) {
  const auto m = unit_tangent_s2(kZ);
  // |H_1| = gcd of the 1x1 minors of d2 when rank d2 = 1 and d1 = 0.
  EXPECT_TRUE(m.total.boundary(1).is_zero());
  EXPECT_EQ(minor_gcd(m.total.boundary(2), 1), 2);
}

TEST(CPsi, QuasiIsomorphismForEveryModel) {
  for (const char* kind : {"hopf_s1", "hopf_s3", "unit_tangent_s2", "product:S2:1", "product:T2:2", "product:S1:1"}) {
    for (const auto ring : {kZ, kF2}) {
      const auto m = build_model(kind, ring);
      const auto r = build_CPsi(m);
      EXPECT_NO_THROW(require_chain_map(r.map)) << kind;
      EXPECT_TRUE(r.quasi_iso) << kind;
      EXPECT_TRUE(is_acyclic(mapping_cone(r.map))) << kind;
      EXPECT_EQ(homology(r.cone), homology(m.total)) << kind;
    }
  }
}

TEST(CPsi, CapsOnTheBase) {
  const auto m = hopf_s1(kZ);
  const auto e = euler_cap(m);
  EXPECT_EQ(e.degree(), -2);
  EXPECT_EQ(std::llabs(e.at("e2", "v")), 1);
  EXPECT_NO_THROW(require_chain_map(e));
  Diagonal bad = m.base_diagonal;
  bad["e2"].push_back({1, "e2", "e2"});
  EXPECT_THROW(require_diagonal_chain_map(m.base, bad), Error);
}

TEST(Gysin, ExactForEveryModel) {
  for (const char* kind : {"hopf_s1", "hopf_s3", "unit_tangent_s2", "product:S2:1", "product:T2:2"}) {
    for (const auto ring : {kZ, kF2}) {
      const auto r = gysin_exactness(build_model(kind, ring));
      EXPECT_TRUE(r.exact) << kind;
    }
  }
}

TEST(Gysin, ProductRanksAreTensorRanks) {
  for (const char* base : {"S2", "S3", "T2"}) {
    for (int k = 1; k <= 3; ++k) {
      const auto m = product_bundle(base, k, kZ);
      const auto hb = homology(m.base);
      const auto hv = homology(m.total);
      for (int d = 0; d <= m.total.top_dim(); ++d) {
        std::size_t expected = 0;
        if (d < static_cast<int>(hb.size())) expected += hb[static_cast<std::size_t>(d)].free_rank;
        if (d - k >= 0 && d - k < static_cast<int>(hb.size())) expected += hb[static_cast<std::size_t>(d - k)].free_rank;
        EXPECT_EQ(hv[static_cast<std::size_t>(d)].free_rank, expected) << base << " k=" << k << " d=" << d;
      }
    }
  }
}

TEST(Gysin, DetectsABrokenTriangle) {
  const auto m = hopf_s1(kZ);
  const GradedMap zero(m.base, m.base, -2);
  // With the cap replaced by zero, H_2(N) is no longer the image of H_2(V).
  EXPECT_FALSE(exact_at(m.rho_push, zero, 2));
  EXPECT_TRUE(exact_at(m.rho_push, euler_cap(m), 2));
}

TEST(BundleFile, RoundTripAndCustomModels) {
  const auto m = unit_tangent_s2(kZ);
  std::stringstream ss;
  write_bundle_model(ss, m);
  const auto back = read_bundle_model(ss);
  EXPECT_EQ(back.euler, m.euler);
  EXPECT_EQ(homology(back.total), homology(m.total));
  EXPECT_TRUE(build_CPsi(back).quasi_iso);

  // Minimal custom file: cells, boundaries, projection, transfer, fiber.
  std::stringstream minimal(
      R"({"kind":"header","name":"rp3","ring":"Integers","fiber_dim":1}
{"kind":"cell","space":"base","label":"v","dim":0}
{"kind":"cell","space":"base","label":"e2","dim":2}
{"kind":"cell","space":"total","label":"v|0","dim":0}
{"kind":"cell","space":"total","label":"v|1","dim":1}
{"kind":"cell","space":"total","label":"e2|0","dim":2}
{"kind":"cell","space":"total","label":"e2|1","dim":3}
{"kind":"boundary","space":"total","from":"e2|0","to":"v|1","coef":2}
{"kind":"rho_push","from":"v|0","to":"v","coef":1}
{"kind":"rho_push","from":"e2|0","to":"e2","coef":1}
{"kind":"rho_transfer","from":"v","to":"v|1","coef":1}
{"kind":"rho_transfer","from":"e2","to":"e2|1","coef":1}
{"kind":"fiber_cycle","cell":"v|1","coef":1}
)");
  const auto custom = read_bundle_model(minimal);
  EXPECT_EQ(std::llabs(custom.euler.values.at(0)), 2);
  EXPECT_TRUE(gysin_exactness(custom).exact);

  std::stringstream wrong(minimal.str() + R"({"kind":"euler","cell":"e2","coef":1}
{"kind":"angular","cell":"v|1","coef":1}
)");
  try {
    (void)read_bundle_model(wrong);
    FAIL() << "expected an invariant violation";
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("d psi"), std::string::npos);
  }

  std::stringstream bad_line(R"({"kind":"header","ring":"Integers","fiber_dim":1}
{"kind":"cell","space":"base","label":"v","dim":0}
{"kind":"boundary","space":"base","from":"nope","to":"v","coef":1}
)");
  try {
    (void)read_bundle_model(bad_line);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

}  // namespace
}  // namespace novikov::classical
