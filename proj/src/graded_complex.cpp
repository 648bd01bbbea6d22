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

#include "novikov/graded_complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "novikov/novikov_linalg.hpp"

namespace novikov {

// ---------------------------------------------------------------- GradedBasis

GradedBasis::GradedBasis(std::vector<Generator> elements) {
  elements_.reserve(elements.size());
  for (auto& g : elements) push_back(std::move(g));
}

void GradedBasis::push_back(Generator g) {
  if (index_.count(g.label) != 0) throw InvalidInput("duplicate generator label '" + g.label + "'");
  index_.emplace(g.label, elements_.size());
  elements_.push_back(std::move(g));
}

std::optional<std::size_t> GradedBasis::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedBasis::index_of(const std::string& label) const {
  auto idx = find(label);
  if (!idx) throw InvalidInput("unknown generator label '" + label + "'");
  return *idx;
}

std::vector<Exponent> GradedBasis::support() const {
  std::set<Exponent> grades;
  for (const auto& g : elements_) grades.insert(g.grade);
  return {grades.begin(), grades.end()};
}

// ---------------------------------------------------------------- OrderInterval

bool OrderInterval::contains(const Exponent& x) const {
  const Extended v(x);
  const bool above = lo_closed ? !(v < lo) : (lo < v);
  const bool below = hi_closed ? !(hi < v) : (v < hi);
  return above && below;
}

bool OrderInterval::on_boundary(const Exponent& x) const {
  const Extended v(x);
  return (lo.is_finite() && v == lo) || (hi.is_finite() && v == hi);
}

std::string OrderInterval::to_string() const {
  return std::string(lo_closed ? "[" : "(") + lo.to_string() + ", " + hi.to_string() + (hi_closed ? "]" : ")");
}

// ---------------------------------------------------------------- NovikovMatrix

NovikovMatrix::NovikovMatrix(GradedBasis source, GradedBasis target, BaseField field)
    : source_(std::move(source)), target_(std::move(target)), field_(field) {}

NovikovMatrix NovikovMatrix::identity(const GradedBasis& basis, BaseField field) {
  return scalar(basis, field, NovikovScalar::one(field));
}

NovikovMatrix NovikovMatrix::scalar(const GradedBasis& basis, BaseField field, const NovikovScalar& value) {
  NovikovMatrix out(basis, basis, field);
  for (std::size_t i = 0; i < basis.size(); ++i) out.set(i, i, value);
  return out;
}

NovikovScalar NovikovMatrix::at(std::size_t target, std::size_t source) const {
  auto it = entries_.find({target, source});
  if (it == entries_.end()) return NovikovScalar::zero(field_);
  return it->second;
}

NovikovScalar NovikovMatrix::at(const std::string& target, const std::string& source) const {
  return at(target_.index_of(target), source_.index_of(source));
}

void NovikovMatrix::set(std::size_t target, std::size_t source, NovikovScalar value) {
  if (target >= target_.size() || source >= source_.size()) throw InvalidInput("matrix index out of range");
  if (value.field() != field_) throw FieldMismatch("entry field differs from matrix field");
  if (value.is_zero() && value.is_exact()) {
    entries_.erase({target, source});
  } else {
    entries_.insert_or_assign({target, source}, std::move(value));
  }
}

void NovikovMatrix::set(const std::string& target, const std::string& source, NovikovScalar value) {
  set(target_.index_of(target), source_.index_of(source), std::move(value));
}

void NovikovMatrix::add(std::size_t target, std::size_t source, const NovikovScalar& value) {
  set(target, source, at(target, source) + value);
}

Exponent NovikovMatrix::shift(std::size_t target, std::size_t source, const Exponent& exponent) const {
  return target_[target].grade + exponent - source_[source].grade;
}

NovikovMatrix NovikovMatrix::truncated(const Extended& cutoff) const {
  NovikovMatrix out(source_, target_, field_);
  for (const auto& [key, value] : entries_) {
    NovikovScalar t = value.truncated(cutoff);
    if (!t.is_zero()) out.entries_.emplace(key, std::move(t));
  }
  return out;
}

NovikovMatrix NovikovMatrix::reindexed(GradedBasis source, GradedBasis target) const {
  if (source.size() != source_.size() || target.size() != target_.size()) {
    throw InvalidInput("reindexed: basis sizes differ");
  }
  NovikovMatrix out(std::move(source), std::move(target), field_);
  out.entries_ = entries_;
  return out;
}

void NovikovMatrix::check_compatible(const NovikovMatrix& other) const {
  if (field_ != other.field_) throw FieldMismatch("matrices over different base fields");
  if (source_.size() != other.source_.size() || target_.size() != other.target_.size()) {
    throw InvalidInput("matrix shapes differ");
  }
}

NovikovMatrix NovikovMatrix::compose(const NovikovMatrix& rhs) const {
  if (field_ != rhs.field_) throw FieldMismatch("matrices over different base fields");
  if (rhs.target_.size() != source_.size()) throw InvalidInput("compose: inner dimensions differ");
  // bucket this by source index to join on the middle index
  std::vector<std::vector<std::pair<std::size_t, const NovikovScalar*>>> by_source(source_.size());
  for (const auto& [key, value] : entries_) by_source[key.second].emplace_back(key.first, &value);
  NovikovMatrix out(rhs.source_, target_, field_);
  for (const auto& [key, value] : rhs.entries_) {
    const auto [mid, src] = key;
    for (const auto& [tgt, left] : by_source[mid]) {
      NovikovScalar prod = *left * value;
      auto it = out.entries_.find({tgt, src});
      if (it == out.entries_.end()) {
        out.entries_.emplace(std::make_pair(tgt, src), std::move(prod));
      } else {
        it->second = it->second + prod;
      }
    }
  }
  std::erase_if(out.entries_, [](const auto& kv) { return kv.second.is_zero() && kv.second.is_exact(); });
  return out;
}

NovikovMatrix operator+(const NovikovMatrix& a, const NovikovMatrix& b) {
  a.check_compatible(b);
  NovikovMatrix out = a;
  for (const auto& [key, value] : b.entries_) out.set(key.first, key.second, out.at(key.first, key.second) + value);
  return out;
}

NovikovMatrix operator-(const NovikovMatrix& a, const NovikovMatrix& b) { return a + (-b); }

NovikovMatrix NovikovMatrix::operator-() const {
  NovikovMatrix out = *this;
  for (auto& [key, value] : out.entries_) value = -value;
  return out;
}

NovikovMatrix NovikovMatrix::scaled(const NovikovScalar& c) const {
  NovikovMatrix out(source_, target_, field_);
  for (const auto& [key, value] : entries_) out.set(key.first, key.second, value * c);
  return out;
}

// ---------------------------------------------------------------- GradedComplex

GradedComplex::GradedComplex(GradedBasis b, BaseField f)
    : basis(b), differential(b, b, f), field(f) {}

GradedComplex::GradedComplex(GradedBasis b, NovikovMatrix d) : basis(std::move(b)), differential(std::move(d)) {
  field = differential.field();
  if (differential.source().size() != basis.size() || differential.target().size() != basis.size()) {
    throw InvalidInput("differential shape does not match basis");
  }
}

std::string EntryWitness::to_string() const { return target + " <- " + source + ": " + value.to_string(); }

DSquaredReport check_d_squared(const GradedComplex& complex, const Exponent& cutoff) {
  DSquaredReport report;
  const NovikovMatrix square = complex.differential.compose(complex.differential).truncated(Extended(cutoff));
  for (const auto& [key, value] : square.entries()) {
    if (value.is_zero()) continue;
    report.ok = false;
    report.offending.push_back({complex.basis[key.first].label, complex.basis[key.second].label, value});
  }
  return report;
}

// ---------------------------------------------------------------- gaps and orders

namespace {

Exponent abs_diff(const Exponent& a, const Exponent& b) { return a < b ? b - a : a - b; }

}  // namespace

GapReport gap_report(const std::vector<Exponent>& grades, const OrderInterval& forbidden) {
  GapReport report;
  for (std::size_t i = 0; i < grades.size(); ++i) {
    for (std::size_t j = i; j < grades.size(); ++j) {
      const Exponent d = abs_diff(grades[i], grades[j]);
      if (forbidden.on_boundary(d) && d.sign() != 0) report.boundary_pairs.emplace_back(grades[i], grades[j]);
      if (forbidden.contains(d) && report.ok) {
        report.ok = false;
        report.witness = std::make_pair(grades[i], grades[j]);
      }
    }
  }
  return report;
}

GapReport cross_gap_report(const std::vector<Exponent>& lhs, const std::vector<Exponent>& rhs,
                           const OrderInterval& forbidden) {
  GapReport report;
  for (const auto& r : lhs) {
    for (const auto& s : rhs) {
      const Exponent d = abs_diff(r, s);
      if (forbidden.on_boundary(d) && d.sign() != 0) report.boundary_pairs.emplace_back(r, s);
      if (forbidden.contains(d) && report.ok) {
        report.ok = false;
        report.witness = std::make_pair(r, s);
      }
    }
  }
  return report;
}

bool gap_check(const GradedBasis& basis, const OrderInterval& forbidden) {
  return gap_report(basis.support(), forbidden).ok;
}

MapOrder map_order(const NovikovMatrix& f) {
  MapOrder out;
  if (f.is_zero()) return out;
  Extended lo = Extended::pos_inf();
  Extended hi = Extended::neg_inf();
  for (const auto& [key, value] : f.entries()) {
    for (const auto& term : value.terms()) {
      const Extended s(f.shift(key.first, key.second, term.exponent));
      lo = min(lo, s);
      hi = max(hi, s);
      if (term.exponent.sign() < 0) out.positive = false;
    }
    if (!value.is_exact()) hi = Extended::pos_inf();
  }
  out.order = OrderInterval::closed(lo, hi);
  return out;
}

SplitDifferential split_map(const NovikovMatrix& f, const Exponent& eps) {
  if (eps.sign() <= 0) throw InvalidInput("split threshold must be positive");
  SplitDifferential out{NovikovMatrix(f.source(), f.target(), f.field()),
                        NovikovMatrix(f.source(), f.target(), f.field())};
  const Exponent two_eps = eps + eps;
  for (const auto& [key, value] : f.entries()) {
    std::vector<Term> low;
    std::vector<Term> high;
    for (const auto& term : value.terms()) {
      const Exponent s = f.shift(key.first, key.second, term.exponent);
      if (s < eps) {
        low.push_back(term);
      } else if (s >= two_eps) {
        high.push_back(term);
      } else {
        throw GapViolation("term " + NovikovScalar::monomial(f.field(), term.exponent, term.coeff).to_string() +
                           " from " + f.source()[key.second].label + " to " + f.target()[key.first].label +
                           " has shift " + s.to_string() + " in [" + eps.to_string() + ", " +
                           two_eps.to_string() + ")");
      }
    }
    // the unknown tail of a truncated entry lies above every known term, so
    // it belongs to the high part
    if (!low.empty()) out.low.set(key.first, key.second, NovikovScalar(f.field(), std::move(low)));
    if (!high.empty() || !value.is_exact()) {
      out.high.set(key.first, key.second, NovikovScalar(f.field(), std::move(high), value.cutoff()));
    }
  }
  return out;
}

SplitDifferential split_differential(const GradedComplex& complex, const Exponent& eps) {
  return split_map(complex.differential, eps);
}

// ---------------------------------------------------------------- homology

HomologyResult homology_rank(const GradedComplex& complex, const Exponent& cutoff, const HomologyOptions& options) {
  if (!is_field(complex.field)) throw NotInvertible("homology over the Novikov field needs a field base, got Integers");
  if (!options.assume_differential) {
    const auto report = check_d_squared(complex, cutoff);
    if (!report.ok) {
      throw NotADifferential("d^2 != 0 modulo t^" + cutoff.to_string() + " at " +
                             report.offending.front().to_string());
    }
  }
  const std::size_t n = complex.size();
  HomologyResult result;
  if (n == 0) return result;

  DenseNovikov d = DenseNovikov::from_sparse(complex.differential);
  const bool dropped = d.truncate_all(Extended(cutoff));
  const PivotOrder order =
      options.tie_break_seed ? PivotOrder::shuffled(n, n, *options.tie_break_seed) : PivotOrder::natural(n, n);
  ColumnReduction red = column_reduce(std::move(d), order, cutoff, true);
  const std::size_t rank = red.pivots.size();
  result.differential_rank = rank;
  result.rank = n - 2 * rank;
  result.exact = !dropped && !(red.reduced.window() < Extended(cutoff));

  // Representatives: reduce each kernel vector against the image columns in
  // pivot order, then keep those whose residuals are independent.
  const std::size_t z = red.free_columns.size();
  DenseNovikov residual(n, z, complex.field);
  for (std::size_t k = 0; k < z; ++k) {
    for (std::size_t i = 0; i < n; ++i) residual(i, k) = red.transform(i, red.free_columns[k]);
  }
  for (const auto& [pr, pc] : red.pivots) {
    const NovikovScalar& p = red.reduced(pr, pc);
    for (std::size_t k = 0; k < z; ++k) {
      const NovikovScalar a = residual(pr, k);
      if (a.is_zero()) continue;
      const NovikovScalar factor = nv_divide(a, p, cutoff);
      for (std::size_t i = 0; i < n; ++i) {
        const NovikovScalar& col = red.reduced(i, pc);
        if (col.is_zero() && col.is_exact()) continue;
        residual(i, k) = residual(i, k) - factor * col;
      }
      residual(pr, k) = NovikovScalar::zero(complex.field);
    }
  }
  PivotOrder residual_order = PivotOrder::natural(n, z);
  for (std::size_t k = 0; k < z; ++k) residual_order.col_rank[k] = red.free_columns[k];
  const ColumnReduction picked = column_reduce(std::move(residual), residual_order, cutoff, false);
  std::vector<std::size_t> chosen;
  for (const auto& [r, c] : picked.pivots) chosen.push_back(c);
  std::sort(chosen.begin(), chosen.end());
  for (std::size_t k : chosen) {
    std::vector<std::pair<std::string, NovikovScalar>> cycle;
    for (std::size_t i = 0; i < n; ++i) {
      const NovikovScalar& v = red.transform(i, red.free_columns[k]);
      if (!v.is_zero()) cycle.emplace_back(complex.basis[i].label, v);
    }
    result.representatives.push_back(std::move(cycle));
  }
  if (result.representatives.size() != result.rank) result.exact = false;
  return result;
}

// ---------------------------------------------------------------- cones

void require_chain_map(const GradedComplex& a, const GradedComplex& b, const NovikovMatrix& f,
                       const Exponent& cutoff) {
  if (f.source().size() != a.size() || f.target().size() != b.size()) {
    throw InvalidInput("chain map shape does not match the complexes");
  }
  const NovikovMatrix defect =
      (f.compose(a.differential) - b.differential.compose(f)).truncated(Extended(cutoff));
  const EntryWitness* worst = nullptr;
  EntryWitness candidate;
  Extended worst_val = Extended::pos_inf();
  for (const auto& [key, value] : defect.entries()) {
    if (value.is_zero()) continue;
    if (worst == nullptr || value.valuation() < worst_val) {
      candidate = {b.basis[key.first].label, a.basis[key.second].label, value};
      worst = &candidate;
      worst_val = value.valuation();
    }
  }
  if (worst != nullptr) {
    throw NotAChainMap("f d_A - d_B f != 0 modulo t^" + cutoff.to_string() + "; worst entry " + worst->to_string());
  }
}

GradedComplex mapping_cone(const GradedComplex& a, const GradedComplex& b, const NovikovMatrix& f,
                           const Exponent& cutoff) {
  if (a.field != b.field || f.field() != a.field) throw FieldMismatch("cone of maps over different base fields");
  require_chain_map(a, b, f, cutoff);

  // hdeg survives only when every generator has one and f preserves it
  bool keep_hdeg = true;
  for (const auto& g : a.basis.elements()) keep_hdeg = keep_hdeg && g.hdeg.has_value();
  for (const auto& g : b.basis.elements()) keep_hdeg = keep_hdeg && g.hdeg.has_value();
  if (keep_hdeg) {
    for (const auto& [key, value] : f.entries()) {
      if (*a.basis[key.second].hdeg != *b.basis[key.first].hdeg) keep_hdeg = false;
    }
  }

  GradedBasis basis;
  for (const auto& g : a.basis.elements()) {
    basis.push_back({"s:" + g.label, g.grade, keep_hdeg ? std::optional<int>(*g.hdeg + 1) : std::nullopt});
  }
  for (const auto& g : b.basis.elements()) {
    basis.push_back({"t:" + g.label, g.grade, keep_hdeg ? g.hdeg : std::nullopt});
  }
  const std::size_t off = a.size();
  NovikovMatrix d(basis, basis, a.field);
  for (const auto& [key, value] : a.differential.entries()) d.set(key.first, key.second, value);
  for (const auto& [key, value] : f.entries()) d.set(off + key.first, key.second, value);
  for (const auto& [key, value] : b.differential.entries()) d.set(off + key.first, off + key.second, -value);
  GradedComplex cone(basis, std::move(d));
  cone.finite_support = a.finite_support && b.finite_support;
  return cone;
}

bool is_quasi_iso(const GradedComplex& a, const GradedComplex& b, const NovikovMatrix& f, const Exponent& cutoff,
                  const HomologyOptions& options) {
  return homology_rank(mapping_cone(a, b, f, cutoff), cutoff, options).rank == 0;
}

}  // namespace novikov
