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

#include "novikov/cone_lemmas.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "novikov/errors.hpp"

namespace novikov {

namespace {

const char* const kPrefix[3] = {"C':", "C:", "C'':"};

OrderInterval open_to(const Exponent& hi) { return OrderInterval::open(Extended(Exponent(0)), Extended(hi)); }

std::string pair_text(const std::pair<Exponent, Exponent>& p) {
  return "(" + p.first.to_string() + ", " + p.second.to_string() + ")";
}

// Calls fn(target, source, term, shift) for every term of f.
template <typename Fn>
void for_each_term(const NovikovMatrix& f, Fn&& fn) {
  for (const auto& [key, value] : f.entries()) {
    for (const auto& term : value.terms()) fn(key.first, key.second, term, f.shift(key.first, key.second, term.exponent));
  }
}

std::string term_text(const std::string& map_name, const NovikovMatrix& f, std::size_t tgt, std::size_t src,
                      const Term& term, const Exponent& shift) {
  return map_name + ": " + f.target()[tgt].label + " <- " + f.source()[src].label + " has term " +
         NovikovScalar::monomial(f.field(), term.exponent, term.coeff).to_string() + " of shift " + shift.to_string();
}

struct NamedMap {
  std::string name;
  const NovikovMatrix* map;
};

std::vector<NamedMap> all_maps(const ConeData& d) {
  return {{"d'", &d.C_prime.differential}, {"d", &d.C.differential}, {"d''", &d.C_dprime.differential},
          {"b", &d.b},                     {"c", &d.c},              {"h", &d.h}};
}

HypothesisCheck check_gap(const ConeData& d, const Exponent& eps) {
  HypothesisCheck out{"GAP", true, {}, {}};
  struct Item {
    std::string what;
    GapReport report;
    std::string interval;
  };
  const Exponent three = eps * Exponent(3);
  const Exponent two = eps * Exponent(2);
  const Exponent four = eps * Exponent(4);
  const std::vector<Item> items = {
      {"A'", gap_report(d.C_prime.basis.support(), open_to(three)), open_to(three).to_string()},
      {"A", gap_report(d.C.basis.support(), open_to(three)), open_to(three).to_string()},
      {"A''", gap_report(d.C_dprime.basis.support(), open_to(two)), open_to(two).to_string()},
      {"A' x A", cross_gap_report(d.C_prime.basis.support(), d.C.basis.support(), open_to(four)),
       open_to(four).to_string()},
  };
  for (const auto& item : items) {
    for (const auto& p : item.report.boundary_pairs) {
      out.boundary.push_back(item.what + " grades " + pair_text(p) + " sit on an endpoint of " + item.interval);
    }
    if (!item.report.ok && out.pass) {
      out.pass = false;
      out.witness = item.what + " grades " + pair_text(*item.report.witness) + " differ by an amount in " +
                    item.interval;
    }
  }
  return out;
}

HypothesisCheck check_pos(const ConeData& d) {
  HypothesisCheck out{"POS", true, {}, {}};
  for (const auto& [name, map] : all_maps(d)) {
    for_each_term(*map, [&](std::size_t t, std::size_t s, const Term& term, const Exponent& shift) {
      if (out.pass && term.exponent.sign() < 0) {
        out.pass = false;
        out.witness = term_text(name, *map, t, s, term, shift) + " with negative exponent";
      }
    });
  }
  return out;
}

HypothesisCheck check_ord1(const ConeData& d, const Exponent& eps) {
  HypothesisCheck out{"ORD1", true, {}, {}};
  const Exponent two = eps * Exponent(2);
  for (const auto& [name, map] : all_maps(d)) {
    const bool is_low_allowed = name == "c" || name == "h";
    const Exponent floor = is_low_allowed ? Exponent(0) : two;
    for_each_term(*map, [&](std::size_t t, std::size_t s, const Term& term, const Exponent& shift) {
      if (out.pass && shift < floor) {
        out.pass = false;
        out.witness = term_text(name, *map, t, s, term, shift) + " below " + floor.to_string();
      }
    });
  }
  return out;
}

HypothesisCheck check_ord2(const ConeData& d, const Exponent& eps) {
  HypothesisCheck out{"ORD2", true, {}, {}};
  const Exponent two = eps * Exponent(2);
  for (const auto& [name, map] : {NamedMap{"c", &d.c}, NamedMap{"h", &d.h}}) {
    for_each_term(*map, [&](std::size_t t, std::size_t s, const Term& term, const Exponent& shift) {
      if (out.pass && !(shift < eps) && shift < two) {
        out.pass = false;
        out.witness = term_text(name, *map, t, s, term, shift) + " in [" + eps.to_string() + ", " +
                      two.to_string() + ")";
      }
    });
  }
  return out;
}

HypothesisCheck check_low1(const ConeData& d, const Exponent& eps) {
  HypothesisCheck out{"LOW1", true, {}, {}};
  for (const auto& [name, map] : {NamedMap{"c", &d.c}, NamedMap{"h", &d.h}}) {
    for_each_term(*map, [&](std::size_t t, std::size_t s, const Term& term, const Exponent& shift) {
      if (out.pass && shift < eps && term.exponent.sign() != 0) {
        out.pass = false;
        out.witness = term_text(name, *map, t, s, term, shift) + ": low term not defined over the base field";
      }
    });
  }
  return out;
}

// t^0 coefficients of the terms with shift < eps; never throws.
BaseMatrix low_matrix(const NovikovMatrix& f, const Exponent& eps) {
  BaseMatrix m(f.target().size(), f.source().size(), f.field());
  for_each_term(f, [&](std::size_t t, std::size_t s, const Term& term, const Exponent& shift) {
    if (shift < eps && term.exponent.sign() == 0) m(t, s) = reduce_coefficient(f.field(), m(t, s) + term.coeff);
  });
  return m;
}

HypothesisCheck check_low2(const ConeData& d, const Exponent& eps) {
  HypothesisCheck out{"LOW2", true, {}, {}};
  const BaseMatrix h0 = low_matrix(d.h, eps);
  const BaseMatrix c0 = low_matrix(d.c, eps);
  const std::size_t n1 = d.C_prime.size();
  const std::size_t n2 = d.C.size();
  const std::size_t n3 = d.C_dprime.size();
  if (n1 + n2 != n3) {
    out.pass = false;
    out.witness = "(h0, c0) is not square: dim A' + dim A = " + std::to_string(n1 + n2) + " but dim A'' = " +
                  std::to_string(n3);
    return out;
  }
  BaseMatrix m(n3, n1 + n2, d.h.field());
  for (std::size_t r = 0; r < n3; ++r) {
    for (std::size_t k = 0; k < n1; ++k) m(r, k) = h0(r, k);
    for (std::size_t k = 0; k < n2; ++k) m(r, n1 + k) = c0(r, k);
  }
  if (auto v = m.kernel_vector()) {
    out.pass = false;
    std::ostringstream os;
    os << "(h0, c0) kills ";
    bool first = true;
    for (std::size_t k = 0; k < v->size(); ++k) {
      if ((*v)[k].sign() == 0) continue;
      if (!first) os << " + ";
      first = false;
      if ((*v)[k] != Rational(1)) os << (*v)[k].to_string() << "*";
      os << (k < n1 ? "A':" + d.C_prime.basis[k].label : "A:" + d.C.basis[k - n1].label);
    }
    out.witness = os.str();
  }
  return out;
}


}  // namespace

void require_cone_structure(const ConeData& data, const Exponent& cutoff) {
  const BaseField f = data.C.field;
  for (const auto* m : {&data.b, &data.c, &data.h}) {
    if (m->field() != f) throw FieldMismatch("cone data maps over different base fields");
  }
  if (data.C_prime.field != f || data.C_dprime.field != f) throw FieldMismatch("cone data complexes over different fields");
  auto shape = [](const NovikovMatrix& m, const GradedComplex& from, const GradedComplex& to, const char* name) {
    if (m.source().size() != from.size() || m.target().size() != to.size()) {
      throw InvalidInput(std::string("map ") + name + " has the wrong shape");
    }
  };
  shape(data.b, data.C_prime, data.C, "b");
  shape(data.c, data.C, data.C_dprime, "c");
  shape(data.h, data.C_prime, data.C_dprime, "h");
  if (data.epsilon.sign() <= 0) throw InvalidInput("epsilon must be positive");
  require_chain_map(data.C_prime, data.C, data.b, cutoff);
  require_chain_map(data.C, data.C_dprime, data.c, cutoff);
  const NovikovMatrix defect = (data.C_dprime.differential.compose(data.h) + data.h.compose(data.C_prime.differential) -
                                data.c.compose(data.b))
                                   .truncated(Extended(cutoff));
  for (const auto& [key, value] : defect.entries()) {
    if (value.is_zero()) continue;
    throw NotAChainMap("h is not a null-homotopy of c b: d''h + hd' - cb at " + data.C_dprime.basis[key.first].label +
                       " <- " + data.C_prime.basis[key.second].label + " is " + value.to_string());
  }
}

GradedComplex double_cone(const ConeData& data) {
  const GradedComplex* parts[3] = {&data.C_prime, &data.C, &data.C_dprime};
  GradedBasis basis;
  std::size_t offset[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    offset[i] = basis.size();
    for (const auto& g : parts[i]->basis.elements()) basis.push_back({kPrefix[i] + g.label, g.grade, std::nullopt});
  }
  NovikovMatrix d(basis, basis, data.C.field);
  auto place = [&](const NovikovMatrix& m, int row_block, int col_block, bool negate) {
    for (const auto& [key, value] : m.entries()) {
      d.set(offset[row_block] + key.first, offset[col_block] + key.second, negate ? -value : value);
    }
  };
  place(data.C_prime.differential, 0, 0, false);
  place(data.b, 1, 0, false);
  place(data.C.differential, 1, 1, true);
  place(data.h, 2, 0, true);
  place(data.c, 2, 1, false);
  place(data.C_dprime.differential, 2, 2, false);
  GradedComplex out(basis, std::move(d));
  out.finite_support = data.C_prime.finite_support && data.C.finite_support && data.C_dprime.finite_support;
  return out;
}

bool HypothesisReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const HypothesisCheck& c) { return c.pass; });
}

const HypothesisCheck& HypothesisReport::get(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw InvalidInput("unknown hypothesis '" + name + "'");
}

std::vector<std::string> HypothesisReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(c.name);
  }
  return out;
}

HypothesisReport check_hypotheses(const ConeData& data) {
  const Exponent& eps = data.epsilon;
  if (eps.sign() <= 0) throw InvalidInput("epsilon must be positive");
  HypothesisReport r;
  r.checks.push_back(check_gap(data, eps));
  r.checks.push_back(check_pos(data));
  r.checks.push_back(check_ord1(data, eps));
  r.checks.push_back(check_ord2(data, eps));
  r.checks.push_back(check_low1(data, eps));
  r.checks.push_back(check_low2(data, eps));
  return r;
}

DoubleConeResult double_cone_check(const ConeData& data, const Exponent& cutoff, const HomologyOptions& options) {
  require_cone_structure(data, cutoff);
  DoubleConeResult out;
  out.report = check_hypotheses(data);
  HomologyOptions opt = options;
  opt.assume_differential = true;  // implied by the structure check
  const auto h = homology_rank(double_cone(data), cutoff, opt);
  out.cone_rank = h.rank;
  out.exact = h.exact;
  out.conclusion = out.report.all_pass() && h.rank == 0;
  return out;
}

BaseMatrix extract_low(const NovikovMatrix& f, const Exponent& eps) {
  const Exponent two = eps * Exponent(2);
  for_each_term(f, [&](std::size_t t, std::size_t s, const Term& term, const Exponent& shift) {
    if (!(shift < eps) && shift < two) throw GapViolation(term_text("map", f, t, s, term, shift));
  });
  return low_matrix(f, eps);
}

// ---------------------------------------------------------------- Seidel

SeidelReport verify_seidel(const GradedComplex& d, const Exponent& eps, const Exponent& cutoff,
                           const HomologyOptions& options) {
  if (eps.sign() <= 0) throw InvalidInput("epsilon must be positive");
  SeidelReport out;
  out.finite_support = d.finite_support;
  const auto gap = gap_report(d.basis.support(), OrderInterval::half_open(Extended(eps), Extended(eps * Exponent(2))));
  out.gap_ok = gap.ok;
  if (!gap.ok) out.gap_witness = "grades " + pair_text(*gap.witness) + " differ by an amount in [eps, 2 eps)";
  for (const auto& p : gap.boundary_pairs) out.boundary.push_back("grades " + pair_text(p) + " on an endpoint");

  NovikovMatrix low(d.basis, d.basis, d.field);
  for_each_term(d.differential, [&](std::size_t t, std::size_t s, const Term& term, const Exponent& shift) {
    if (!out.order_ok) return;
    if (shift.sign() < 0) {
      out.order_ok = false;
      out.order_witness = term_text("d", d.differential, t, s, term, shift) + " below 0";
    } else if (!(shift < eps) && shift < eps * Exponent(2)) {
      out.order_ok = false;
      out.order_witness = term_text("d", d.differential, t, s, term, shift) + " in [eps, 2 eps)";
    }
  });
  if (out.order_ok) low = split_differential(d, eps).low;

  const GradedComplex low_complex(d.basis, low);
  out.low_is_differential = check_d_squared(low_complex, cutoff).ok;
  HomologyOptions opt = options;
  if (out.low_is_differential) {
    out.low_rank = homology_rank(low_complex, cutoff, opt).rank;
    out.low_acyclic = out.low_rank == 0;
  }
  out.total_rank = homology_rank(d, cutoff, opt).rank;
  out.hypotheses = out.finite_support && out.gap_ok && out.order_ok && out.low_is_differential && out.low_acyclic;
  out.conclusion = out.total_rank == 0;
  return out;
}

// ---------------------------------------------------------------- counterexample

namespace {

GradedComplex counterexample_complex(int x_count, int y_count) {
  GradedBasis basis;
  for (int r = 0; r < x_count; ++r) basis.push_back({"x^" + std::to_string(r), Exponent(r), std::nullopt});
  for (int r = 0; r < y_count; ++r) basis.push_back({"y^" + std::to_string(r), Exponent(r), std::nullopt});
  GradedComplex c(basis, BaseField::GF2);
  const auto one = NovikovScalar::one(BaseField::GF2);
  for (int r = 0; r < x_count; ++r) {
    // (1 - y) y^r, with 1 - y = 1 + y in characteristic 2
    const std::string x = "x^" + std::to_string(r);
    if (r < y_count) c.differential.set("y^" + std::to_string(r), x, one);
    if (r + 1 < y_count) c.differential.set("y^" + std::to_string(r + 1), x, one);
  }
  return c;
}

}  // namespace

Counterexample build_counterexample(int max_degree) {
  if (max_degree < 1) throw InvalidInput("max_degree must be at least 1");
  Counterexample out;
  out.max_degree = max_degree;
  out.finite = counterexample_complex(max_degree - 1, max_degree);
  out.finite.finite_support = false;
  out.completed_witness.assign(static_cast<std::size_t>(max_degree), NovikovScalar::one(BaseField::GF2));
  return out;
}

GradedComplex counterexample_quotient(int q) {
  if (q < 0) throw InvalidInput("quotient level must be nonnegative");
  GradedComplex c = counterexample_complex(q, q);
  c.finite_support = false;
  return c;
}

WitnessCheck check_completion_witness(const Counterexample& ce) {
  const int n = ce.max_degree;
  WitnessCheck out;
  if (static_cast<int>(ce.completed_witness.size()) != n) {
    out.detail = "witness has the wrong length";
    return out;
  }
  // A model holding every x^r of the witness and every y^r it can reach.
  const GradedComplex model = counterexample_complex(n, n + 1);
  std::vector<NovikovScalar> image(model.size(), NovikovScalar::zero(BaseField::GF2));
  for (int r = 0; r < n; ++r) {
    const std::size_t src = model.basis.index_of("x^" + std::to_string(r));
    for (const auto& [key, value] : model.differential.entries()) {
      if (key.second == src) image[key.first] = image[key.first] + value * ce.completed_witness[r];
    }
  }
  const Exponent bound(n);
  std::ostringstream residue;
  bool ok = true;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const auto& g = model.basis[i];
    if (!(g.grade < bound)) continue;
    const NovikovScalar expect =
        g.label == "y^0" ? NovikovScalar::one(BaseField::GF2) : NovikovScalar::zero(BaseField::GF2);
    if (!(image[i] == expect)) {
      ok = false;
      residue << g.label << " has coefficient " << image[i].to_string() << "; ";
    }
  }
  // Same identity with y = t: (1 + t) sum_{r<n} t^r = 1 mod t^n.
  std::vector<Term> series;
  for (int r = 0; r < n; ++r) series.push_back({Exponent(r), Rational(1)});
  const NovikovScalar s(BaseField::GF2, series);
  const NovikovScalar one_plus_t(BaseField::GF2, {{Exponent(0), Rational(1)}, {Exponent(1), Rational(1)}});
  const NovikovScalar prod = nv_mul(one_plus_t, s).truncated(Extended(bound));
  if (!(prod == NovikovScalar::one(BaseField::GF2).truncated(Extended(bound)))) {
    ok = false;
    residue << "(1 + t) * sum t^r = " << prod.to_string() << "; ";
  }
  out.ok = ok;
  out.detail = ok ? "d(sum_{r<" + std::to_string(n) + "} x^r) = y^0 mod grade " + std::to_string(n) : residue.str();
  return out;
}

InverseLimitReport verify_inverse_limit(const GradedComplex& d, const Exponent& step, int q_max) {
  if (step.sign() <= 0) throw InvalidInput("filtration step must be positive");
  for (const auto& [key, value] : d.differential.entries()) {
    for (const auto& term : value.terms()) {
      if (term.exponent.sign() != 0) {
        throw InvalidInput("inverse-limit check needs base-field coefficients; entry " + d.basis[key.first].label +
                           " <- " + d.basis[key.second].label + " has " + value.to_string());
      }
    }
    if (d.differential.shift(key.first, key.second, Exponent(0)).sign() < 0) {
      throw InvalidInput("filtration not preserved: " + d.basis[key.first].label + " <- " +
                         d.basis[key.second].label + " lowers the grade");
    }
  }
  InverseLimitReport out;
  out.all_acyclic = true;
  for (int q = 1; q <= q_max; ++q) {
    const Exponent threshold = step * Exponent(q);
    std::vector<std::size_t> keep;
    GradedBasis basis;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (d.basis[i].grade < threshold) {
        keep.push_back(i);
        basis.push_back(d.basis[i]);
      }
    }
    std::vector<std::optional<std::size_t>> where(d.size());
    for (std::size_t k = 0; k < keep.size(); ++k) where[keep[k]] = k;
    NovikovMatrix m(basis, basis, d.field);
    for (const auto& [key, value] : d.differential.entries()) {
      if (where[key.first] && where[key.second]) m.set(*where[key.first], *where[key.second], value);
    }
    const auto rank = homology_rank(GradedComplex(basis, m), Exponent(1)).rank;
    out.quotient_ranks.push_back(rank);
    if (rank != 0) out.all_acyclic = false;
  }
  return out;
}

// ---------------------------------------------------------------- E1 and epsilon

std::vector<std::pair<int, std::size_t>> filtration_E1(const ConeData& data, int p_max) {
  const GradedComplex d = double_cone(data);
  const Exponent& eps = data.epsilon;
  if (eps.sign() <= 0) throw InvalidInput("epsilon must be positive");
  std::vector<std::pair<int, std::size_t>> out;
  if (d.size() == 0) return out;

  // Every grade, exponent and band edge lies on (1/m)Z, so one lattice coset
  // of Novikov exponents represents all of them.
  std::int64_t m = eps.den();
  Exponent min_grade = d.basis[0].grade;
  for (const auto& g : d.basis.elements()) {
    m = std::lcm(m, g.grade.den());
    min_grade = std::min(min_grade, g.grade);
  }
  for (const auto& [key, value] : d.differential.entries()) {
    for (const auto& term : value.terms()) {
      m = std::lcm(m, term.exponent.den());
      if (d.differential.shift(key.first, key.second, term.exponent).sign() < 0) {
        throw InvalidInput("filtration not preserved by the differential at " + d.basis[key.first].label + " <- " +
                           d.basis[key.second].label);
      }
    }
  }
  const Exponent unit(1, m);
  auto ceil_units = [&](const Exponent& x) {
    const Exponent q = x / unit;
    return q.is_integer() ? q.floor() : q.floor() + 1;
  };
  const std::int64_t p_min = (min_grade / eps).floor();
  for (std::int64_t p = p_min; p <= p_max; ++p) {
    const Exponent lo = eps * Exponent(p);
    const Exponent hi = eps * Exponent(p + 1);
    // element (g, k) is g t^(k/m); first[g] and count[g] give its k-range
    std::vector<std::int64_t> first(d.size());
    std::vector<std::size_t> base(d.size());
    std::size_t dim = 0;
    std::vector<std::int64_t> count(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      first[i] = ceil_units(lo - d.basis[i].grade);
      count[i] = ceil_units(hi - d.basis[i].grade) - first[i];
      base[i] = dim;
      dim += static_cast<std::size_t>(count[i]);
    }
    BaseMatrix mat(dim, dim, d.field);
    for (const auto& [key, value] : d.differential.entries()) {
      const auto [tgt, src] = key;
      for (const auto& term : value.terms()) {
        const std::int64_t f = (term.exponent / unit).floor();
        for (std::int64_t k = 0; k < count[src]; ++k) {
          const std::int64_t kt = first[src] + k + f - first[tgt];
          if (kt < 0 || kt >= count[tgt]) continue;
          auto& cell = mat(base[tgt] + static_cast<std::size_t>(kt), base[src] + static_cast<std::size_t>(k));
          cell = reduce_coefficient(d.field, cell + term.coeff);
        }
      }
    }
    out.emplace_back(static_cast<int>(p), dim - 2 * mat.rank());
  }
  return out;
}

bool epsilon_admissible(const ConeData& data, const Exponent& eps) {
  if (eps.sign() <= 0) return false;
  if (!check_gap(data, eps).pass) return false;
  if (!check_ord1(data, eps).pass) return false;
  return check_ord2(data, eps).pass;
}

std::optional<Exponent> compute_epsilon(const ConeData& data) {
  std::set<Exponent> candidates;
  Exponent largest(0);
  for (const auto& [name, map] : all_maps(data)) {
    for_each_term(*map, [&](std::size_t, std::size_t, const Term&, const Exponent& shift) {
      if (shift.sign() > 0) {
        candidates.insert(shift);
        candidates.insert(shift / Exponent(2));
        largest = std::max(largest, shift);
      }
    });
  }
  auto add_gaps = [&](const std::vector<Exponent>& a, const std::vector<Exponent>& b) {
    for (const auto& r : a) {
      for (const auto& s : b) {
        const Exponent g = r < s ? s - r : r - s;
        if (g.sign() <= 0) continue;
        for (int k = 2; k <= 4; ++k) candidates.insert(g / Exponent(k));
        largest = std::max(largest, g);
      }
    }
  };
  add_gaps(data.C_prime.basis.support(), data.C_prime.basis.support());
  add_gaps(data.C.basis.support(), data.C.basis.support());
  add_gaps(data.C_dprime.basis.support(), data.C_dprime.basis.support());
  add_gaps(data.C_prime.basis.support(), data.C.basis.support());
  candidates.insert(Exponent(1));
  if (largest.sign() > 0) candidates.insert(largest * Exponent(2));
  for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
    if (epsilon_admissible(data, *it)) return *it;
  }
  return std::nullopt;
}

}  // namespace novikov
