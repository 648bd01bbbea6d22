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

#include "novikov/morse_floer_model.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "novikov/errors.hpp"

namespace novikov::morse {

namespace {

constexpr BaseField kF = BaseField::GF2;

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

bool coin(Rng& rng, int num, int den) { return static_cast<int>(rng() % static_cast<std::uint64_t>(den)) < num; }

// Exponent for a term from grade gs to grade gt whose shift is at least
// floor, padded by a random multiple of eps/2.
Exponent high_exponent(const Exponent& gs, const Exponent& gt, const Exponent& floor, const Exponent& eps, Rng& rng) {
  const Exponent base = std::max(Exponent(0), floor - (gt - gs));
  return base + eps * Exponent(static_cast<std::int64_t>(pick(rng, 3)), 2);
}

NovikovScalar high_term(const GradedBasis& src, std::size_t s, const GradedBasis& tgt, std::size_t t,
                        const Exponent& floor, const Exponent& eps, Rng& rng) {
  return NovikovScalar::monomial(kF, high_exponent(src[s].grade, tgt[t].grade, floor, eps, rng));
}

// Random positive map of shift >= floor; entry density richness/8.
NovikovMatrix random_high(const GradedBasis& src, const GradedBasis& tgt, int richness, const Exponent& floor,
                          const Exponent& eps, Rng& rng) {
  NovikovMatrix m(src, tgt, kF);
  if (richness <= 0) return m;
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    for (std::size_t s = 0; s < src.size(); ++s) {
      if (coin(rng, richness, 8)) m.set(t, s, high_term(src, s, tgt, t, floor, eps, rng));
    }
  }
  return m;
}

// Strictly triangular in a random order, so nilpotent; `skip` is left untouched.
NovikovMatrix random_nilpotent(const GradedBasis& basis, int richness, const Exponent& floor, const Exponent& eps,
                               Rng& rng, std::optional<std::size_t> skip = std::nullopt) {
  NovikovMatrix n(basis, basis, kF);
  if (richness <= 0) return n;
  std::vector<std::size_t> order(basis.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const std::size_t t = order[i];
      const std::size_t s = order[j];
      if (skip && (t == *skip || s == *skip)) continue;
      if (coin(rng, richness, 8)) n.set(t, s, high_term(basis, s, basis, t, floor, eps, rng));
    }
  }
  return n;
}

// (id + N)^{-1} = sum (-N)^j for nilpotent N.
NovikovMatrix unipotent_inverse(const NovikovMatrix& nil) {
  const NovikovMatrix id = NovikovMatrix::identity(nil.source(), nil.field());
  NovikovMatrix inv = id;
  NovikovMatrix power = id;
  for (std::size_t k = 0; k < nil.source().size(); ++k) {
    power = (-nil).compose(power);
    if (power.is_zero()) break;
    inv = inv + power;
  }
  return inv;
}

// Random partial matching u -> t^e v with shift >= floor; `skip` is unmatched.
NovikovMatrix random_matching(const GradedBasis& basis, int richness, const Exponent& floor, const Exponent& eps,
                              Rng& rng, std::optional<std::size_t> skip = std::nullopt) {
  NovikovMatrix d(basis, basis, kF);
  if (richness <= 0) return d;
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!skip || i != *skip) free.push_back(i);
  }
  std::shuffle(free.begin(), free.end(), rng);
  const std::size_t pairs = pick(rng, free.size() / 2 + 1);
  for (std::size_t p = 0; p < pairs; ++p) {
    const std::size_t u = free[2 * p];
    const std::size_t v = free[2 * p + 1];
    d.set(v, u, high_term(basis, u, basis, v, floor, eps, rng));
  }
  return d;
}

GradedBasis with_grade(const GradedBasis& b, std::size_t index, const Exponent& grade) {
  GradedBasis out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    Generator g = b[i];
    if (i == index) g.grade = grade;
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

bool FixedPointSet::has_actions() const {
  return !points.empty() &&
         std::all_of(points.begin(), points.end(), [](const FixedPoint& p) { return p.action.has_value(); });
}

MorseFloerInstance build_intersection(const FixedPointSet& fix, const MorseFiber& fiber) {
  if (fiber.k < 1) throw InvalidInput("fiber dimension must be at least 1");
  MorseFloerInstance inst;
  inst.fix = fix;
  inst.fiber = fiber;
  inst.action_grades = fix.has_actions();
  std::set<std::string> seen;
  for (const auto& p : fix.points) {
    if (!seen.insert(p.label).second) throw InvalidInput("duplicate fixed point label '" + p.label + "'");
    const Exponent grade = inst.action_grades ? *p.action : Exponent(0);
    inst.A.push_back({p.label, grade, std::nullopt});
    inst.A_prime.push_back({p.label, grade, std::nullopt});
  }
  for (const auto& p : fix.points) {
    const Exponent grade = inst.action_grades ? *p.action : Exponent(0);
    inst.A_dprime.push_back({p.label + ".min", grade, 0});
    inst.A_dprime.push_back({p.label + ".max", grade, fiber.k});
  }
  const std::size_t n = fix.points.size();
  inst.c0 = BaseMatrix(2 * n, n, kF);
  inst.h0 = BaseMatrix(2 * n, n, kF);
  for (std::size_t i = 0; i < n; ++i) {
    inst.h0(2 * i, i) = Rational(1);
    inst.c0(2 * i + 1, i) = Rational(1);
  }
  return inst;
}

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::None: return "none";
    case Mutation::Low2: return "low2";
    case Mutation::Gap: return "gap";
    case Mutation::Pos: return "pos";
  }
  return "none";
}

Mutation parse_mutation(const std::string& text) {
  if (text == "none") return Mutation::None;
  if (text == "low2") return Mutation::Low2;
  if (text == "gap") return Mutation::Gap;
  if (text == "pos") return Mutation::Pos;
  throw InvalidInput("unknown mutation '" + text + "'");
}

ConeData synthesize_cone_data(const MorseFloerInstance& inst, const Exponent& eps, std::uint64_t seed,
                              const SynthesisParams& params) {
  if (eps.sign() <= 0) throw InvalidInput("epsilon must be positive");
  const std::size_t n = inst.A.size();
  const int r = std::clamp(params.richness, 0, 3);
  Rng rng(seed);
  const bool gap_mode = params.mutation == Mutation::Gap;
  const Exponent floor = eps * Exponent(gap_mode ? 3 : 2);

  std::optional<std::size_t> isolated;
  if (params.mutation == Mutation::Low2) {
    if (n == 0) throw InvalidInput("low2 mutation needs a fixed point");
    isolated = pick(rng, n);
  }

  // C' = C as complexes: a matching conjugated by id + N.
  const NovikovMatrix nil_d = random_nilpotent(inst.A, r, floor, eps, rng, isolated);
  const NovikovMatrix g_d = NovikovMatrix::identity(inst.A, kF) + nil_d;
  const NovikovMatrix dm = random_matching(inst.A, r, floor, eps, rng, isolated);
  const NovikovMatrix delta = g_d.compose(dm).compose(unipotent_inverse(nil_d));
  GradedComplex c_prime(inst.A_prime, delta.reindexed(inst.A_prime, inst.A_prime));
  GradedComplex c(inst.A, delta);

  // b = (t^s id + dK + Kd') P
  NovikovMatrix b(inst.A_prime, inst.A, kF);
  if (r > 0) {
    if (coin(rng, 1, 2)) {
      const Exponent s = floor + eps * Exponent(static_cast<std::int64_t>(pick(rng, 3)), 2);
      for (std::size_t i = 0; i < n; ++i) b.set(i, i, NovikovScalar::monomial(kF, s));
    }
    const NovikovMatrix k = random_high(inst.A_prime, inst.A, r, floor, eps, rng);
    b = b + c.differential.compose(k) + k.compose(c_prime.differential);
  }
  NovikovMatrix proj = NovikovMatrix::identity(inst.A_prime, kF);
  if (isolated) proj.set(*isolated, *isolated, NovikovScalar::zero(kF));
  b = b.compose(proj);

  // C'' = cone(b): (x, min) carries the C' copy, (x, max) the C copy.
  const GradedBasis& a2 = inst.A_dprime;
  NovikovMatrix dd(a2, a2, kF);
  for (const auto& [key, value] : c_prime.differential.entries()) dd.set(2 * key.first, 2 * key.second, value);
  for (const auto& [key, value] : b.entries()) dd.set(2 * key.first + 1, 2 * key.second, value);
  for (const auto& [key, value] : c.differential.entries()) dd.set(2 * key.first + 1, 2 * key.second + 1, value);
  GradedComplex c_dprime(a2, dd);

  NovikovMatrix cm(inst.A, a2, kF);
  NovikovMatrix hm(inst.A_prime, a2, kF);
  for (std::size_t i = 0; i < n; ++i) {
    cm.set(2 * i + 1, i, NovikovScalar::one(kF));
    if (!isolated || *isolated != i) hm.set(2 * i, i, NovikovScalar::one(kF));
  }

  if (r > 0) {
    // h += c Q with Q = dK + Kd' null-homotopic, and h += d''M + Md'.
    const NovikovMatrix kq = random_high(inst.A_prime, inst.A, r, floor, eps, rng);
    const NovikovMatrix q = c.differential.compose(kq) + kq.compose(c_prime.differential);
    const NovikovMatrix m = random_high(inst.A_prime, a2, r, floor, eps, rng);
    hm = hm + cm.compose(q) + c_dprime.differential.compose(m) + m.compose(c_prime.differential);
    // c += d''L + Ld, h += Lb
    const NovikovMatrix l = random_high(inst.A, a2, r, floor, eps, rng);
    cm = cm + c_dprime.differential.compose(l) + l.compose(c.differential);
    hm = hm + l.compose(b);
    // conjugate each complex by its own unipotent automorphism
    const NovikovMatrix n1 = random_nilpotent(inst.A_prime, r, floor, eps, rng);
    const NovikovMatrix n2 = random_nilpotent(inst.A, r, floor, eps, rng);
    const NovikovMatrix n3 = random_nilpotent(a2, r, floor, eps, rng);
    const NovikovMatrix g1 = NovikovMatrix::identity(inst.A_prime, kF) + n1;
    const NovikovMatrix g2 = NovikovMatrix::identity(inst.A, kF) + n2;
    const NovikovMatrix g3 = NovikovMatrix::identity(a2, kF) + n3;
    const NovikovMatrix g1_inv = unipotent_inverse(n1);
    const NovikovMatrix g2_inv = unipotent_inverse(n2);
    const NovikovMatrix g3_inv = unipotent_inverse(n3);
    c_prime.differential = g1.compose(c_prime.differential).compose(g1_inv);
    c.differential = g2.compose(c.differential).compose(g2_inv);
    c_dprime.differential = g3.compose(c_dprime.differential).compose(g3_inv);
    b = g2.compose(b).compose(g1_inv);
    cm = g3.compose(cm).compose(g2_inv);
    hm = g3.compose(hm).compose(g1_inv);
  }

  if (params.mutation == Mutation::Pos) {
    // g'' = id + N with a single term t^(-eps) from a lower to a higher
    // action; N^2 = 0 so g''^(-1) = id - N.
    if (!inst.action_grades || n < 2) throw InvalidInput("pos mutation needs action grades and two fixed points");
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.A[i].grade < inst.A[lo].grade) lo = i;
      if (inst.A[hi].grade < inst.A[i].grade) hi = i;
    }
    if (!(inst.A[hi].grade - inst.A[lo].grade >= eps * Exponent(5))) {
      throw InvalidInput("pos mutation needs two actions at least 5 eps apart");
    }
    const std::size_t u = 2 * lo + pick(rng, 2);
    const std::size_t v = 2 * hi + pick(rng, 2);
    NovikovMatrix nil(a2, a2, kF);
    nil.set(v, u, NovikovScalar::monomial(kF, -eps));
    const NovikovMatrix g = NovikovMatrix::identity(a2, kF) + nil;
    const NovikovMatrix g_inv = NovikovMatrix::identity(a2, kF) - nil;
    c_dprime.differential = g.compose(c_dprime.differential).compose(g_inv);
    cm = g.compose(cm);
    hm = g.compose(hm);
  }

  if (gap_mode) {
    if (n == 0) throw InvalidInput("gap mutation needs a fixed point");
    const std::size_t x = pick(rng, n);
    const GradedBasis moved = with_grade(a2, 2 * x, a2[2 * x].grade + eps / Exponent(2));
    c_dprime = GradedComplex(moved, c_dprime.differential.reindexed(moved, moved));
    cm = cm.reindexed(inst.A, moved);
    hm = hm.reindexed(inst.A_prime, moved);
  }

  ConeData out;
  out.C_prime = std::move(c_prime);
  out.C = std::move(c);
  out.C_dprime = std::move(c_dprime);
  out.b = std::move(b);
  out.c = std::move(cm);
  out.h = std::move(hm);
  out.epsilon = eps;
  return out;
}

PipelineReport run_theorem_pipeline(const MorseFloerInstance& instance, const Exponent& eps, const Exponent& cutoff,
                                    std::uint64_t seed, const SynthesisParams& params,
                                    const HomologyOptions& options) {
  const ConeData data = synthesize_cone_data(instance, eps, seed, params);
  PipelineReport out;
  out.check = double_cone_check(data, cutoff, options);
  out.rank_C_prime = homology_rank(data.C_prime, cutoff, options).rank;
  out.rank_C = homology_rank(data.C, cutoff, options).rank;
  out.rank_cone_b = homology_rank(mapping_cone(data.C_prime, data.C, data.b, cutoff), cutoff, options).rank;
  out.rank_C_dprime = homology_rank(data.C_dprime, cutoff, options).rank;
  out.ranks_agree = out.rank_cone_b == out.rank_C_dprime;
  out.pass = out.check.conclusion && out.ranks_agree;
  return out;
}

FixedPointSet make_fixed_points(const GeneratorConfig& config) {
  if (config.fix_count < 0) throw InvalidInput("fix count must be nonnegative");
  FixedPointSet fix;
  std::vector<std::int64_t> slots(static_cast<std::size_t>(config.fix_count));
  std::iota(slots.begin(), slots.end(), std::int64_t{0});
  Rng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::shuffle(slots.begin(), slots.end(), rng);
  for (int i = 0; i < config.fix_count; ++i) {
    FixedPoint p{"p" + std::to_string(i), std::nullopt};
    if (config.action_grades) p.action = config.epsilon * Exponent(5 * slots[static_cast<std::size_t>(i)]);
    fix.points.push_back(std::move(p));
  }
  return fix;
}

ConeData generate_cone_data(const GeneratorConfig& config) {
  const auto inst = build_intersection(make_fixed_points(config), MorseFiber{config.fiber_dim});
  return synthesize_cone_data(inst, config.epsilon, config.seed, {config.richness, config.mutation});
}

GeneratorConfig random_config(std::uint64_t seed, Mutation mutation, const Exponent& eps) {
  Rng rng(seed * 0x2545f4914f6cdd1dULL + 17);
  GeneratorConfig c;
  c.seed = seed;
  c.epsilon = eps;
  c.mutation = mutation;
  c.fix_count = 1 + static_cast<int>(pick(rng, 6));
  c.fiber_dim = 1 + static_cast<int>(pick(rng, 3));
  c.richness = static_cast<int>(pick(rng, 4));
  c.action_grades = coin(rng, 1, 2);
  if (mutation == Mutation::Pos) {
    c.fix_count = std::max(c.fix_count, 2);
    c.action_grades = true;
  }
  return c;
}

GradedComplex random_seidel_instance(std::uint64_t seed, const Exponent& eps) {
  Rng rng(seed);
  const std::size_t clumps = 1 + pick(rng, 4);
  GradedBasis basis;
  std::vector<std::vector<std::size_t>> members(clumps);
  for (std::size_t k = 0; k < clumps; ++k) {
    const Exponent center = eps * Exponent(static_cast<std::int64_t>(3 * k + pick(rng, 2)) * 3, 2);
    const std::size_t size = 2 * (1 + pick(rng, 2));
    for (std::size_t j = 0; j < size; ++j) {
      const Exponent offset = eps * Exponent(static_cast<std::int64_t>(pick(rng, 4)), 8);
      members[k].push_back(basis.size());
      basis.push_back({"k" + std::to_string(k) + "." + std::to_string(j), center + offset, std::nullopt});
    }
  }
  NovikovMatrix low(basis, basis, kF);
  for (auto& m : members) {
    std::shuffle(m.begin(), m.end(), rng);
    for (std::size_t p = 0; 2 * p < m.size(); ++p) {
      std::size_t u = m[2 * p];
      std::size_t v = m[2 * p + 1];
      if (basis[v].grade < basis[u].grade) std::swap(u, v);
      low.set(v, u, NovikovScalar::one(kF));
    }
  }
  const NovikovMatrix nil = random_nilpotent(basis, 1 + static_cast<int>(pick(rng, 3)), eps * Exponent(2), eps, rng);
  const NovikovMatrix g = NovikovMatrix::identity(basis, kF) + nil;
  return {basis, g.compose(low).compose(unipotent_inverse(nil))};
}

GradedComplex random_floer_complex(std::uint64_t seed, std::size_t size, BaseField field) {
  if (!is_field(field)) throw InvalidInput("random complexes need a field base");
  Rng rng(seed);
  GradedBasis basis;
  for (std::size_t i = 0; i < size; ++i) {
    basis.push_back({"g" + std::to_string(i), Exponent(static_cast<std::int64_t>(pick(rng, 4))), std::nullopt});
  }
  std::vector<std::size_t> perm(size);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  NovikovMatrix d(basis, basis, field);
  const std::size_t pairs = pick(rng, size / 2 + 1);
  for (std::size_t p = 0; p < pairs; ++p) {
    d.set(perm[2 * p + 1], perm[2 * p],
          NovikovScalar::monomial(field, Exponent(static_cast<std::int64_t>(pick(rng, 3)))));
  }
  NovikovMatrix nil(basis, basis, field);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      if (!coin(rng, 1, 3)) continue;
      const Rational coeff = field == BaseField::GF2 ? Rational(1) : Rational(coin(rng, 1, 2) ? 1 : -1);
      nil.set(perm[i], perm[j], NovikovScalar::monomial(field, Exponent(static_cast<std::int64_t>(pick(rng, 3))), coeff));
    }
  }
  const NovikovMatrix g = NovikovMatrix::identity(basis, field) + nil;
  return {basis, g.compose(d).compose(unipotent_inverse(nil))};
}

}  // namespace novikov::morse
