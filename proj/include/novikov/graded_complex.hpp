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

#ifndef NOVIKOV_GRADED_COMPLEX_HPP
#define NOVIKOV_GRADED_COMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "novikov/novikov_scalar.hpp"

namespace novikov {

struct Generator {
  std::string label;
  Exponent grade;
  std::optional<int> hdeg;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Finite basis of an R-graded module; labels are unique.
class GradedBasis {
 public:
  GradedBasis() = default;
  explicit GradedBasis(std::vector<Generator> elements);

  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] bool empty() const noexcept { return elements_.empty(); }
  [[nodiscard]] const Generator& operator[](std::size_t i) const { return elements_.at(i); }
  [[nodiscard]] const std::vector<Generator>& elements() const noexcept { return elements_; }
  [[nodiscard]] std::optional<std::size_t> find(const std::string& label) const;
  /// Throws InvalidInput for unknown labels.
  [[nodiscard]] std::size_t index_of(const std::string& label) const;
  /// Sorted distinct grades.
  [[nodiscard]] std::vector<Exponent> support() const;

  void push_back(Generator g);

  friend bool operator==(const GradedBasis& a, const GradedBasis& b) { return a.elements_ == b.elements_; }

 private:
  std::vector<Generator> elements_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Interval with independent closure flags on each finite endpoint.
struct OrderInterval {
  Extended lo = Extended::pos_inf();
  Extended hi = Extended::pos_inf();
  bool lo_closed = true;
  bool hi_closed = false;

  static OrderInterval closed(Extended lo, Extended hi) { return {std::move(lo), std::move(hi), true, true}; }
  static OrderInterval half_open(Extended lo, Extended hi) { return {std::move(lo), std::move(hi), true, false}; }
  static OrderInterval open(Extended lo, Extended hi) { return {std::move(lo), std::move(hi), false, false}; }

  [[nodiscard]] bool contains(const Exponent& x) const;
  [[nodiscard]] bool on_boundary(const Exponent& x) const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const OrderInterval&, const OrderInterval&) = default;
};

/// Sparse Novikov-valued matrix between two graded bases. Entries are keyed by
/// (target index, source index); no zero entries are stored.
class NovikovMatrix {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  NovikovMatrix() = default;
  NovikovMatrix(GradedBasis source, GradedBasis target, BaseField field);

  static NovikovMatrix identity(const GradedBasis& basis, BaseField field);
  /// t^exponent * identity.
  static NovikovMatrix scalar(const GradedBasis& basis, BaseField field, const NovikovScalar& value);

  [[nodiscard]] const GradedBasis& source() const noexcept { return source_; }
  [[nodiscard]] const GradedBasis& target() const noexcept { return target_; }
  [[nodiscard]] BaseField field() const noexcept { return field_; }
  [[nodiscard]] const std::map<Key, NovikovScalar>& entries() const noexcept { return entries_; }
  [[nodiscard]] bool is_zero() const noexcept { return entries_.empty(); }

  /// Entry at (target, source); zero when absent.
  [[nodiscard]] NovikovScalar at(std::size_t target, std::size_t source) const;
  [[nodiscard]] NovikovScalar at(const std::string& target, const std::string& source) const;

  /// Replace the entry; zero values erase it.
  void set(std::size_t target, std::size_t source, NovikovScalar value);
  void set(const std::string& target, const std::string& source, NovikovScalar value);
  /// Add to the existing entry.
  void add(std::size_t target, std::size_t source, const NovikovScalar& value);

  /// Grade shift of a single term: grade(target) + exponent - grade(source).
  [[nodiscard]] Exponent shift(std::size_t target, std::size_t source, const Exponent& exponent) const;

  /// Entry-wise truncation.
  [[nodiscard]] NovikovMatrix truncated(const Extended& cutoff) const;
  [[nodiscard]] NovikovMatrix reindexed(GradedBasis source, GradedBasis target) const;

  /// this o rhs (rhs applied first).
  [[nodiscard]] NovikovMatrix compose(const NovikovMatrix& rhs) const;
  friend NovikovMatrix operator+(const NovikovMatrix& a, const NovikovMatrix& b);
  friend NovikovMatrix operator-(const NovikovMatrix& a, const NovikovMatrix& b);
  [[nodiscard]] NovikovMatrix operator-() const;
  [[nodiscard]] NovikovMatrix scaled(const NovikovScalar& c) const;

  friend bool operator==(const NovikovMatrix&, const NovikovMatrix&) = default;

 private:
  void check_compatible(const NovikovMatrix& other) const;

  GradedBasis source_;
  GradedBasis target_;
  BaseField field_ = BaseField::GF2;
  std::map<Key, NovikovScalar> entries_;
};

/// A finite-rank R-graded module with a Novikov-linear differential.
struct GradedComplex {
  GradedBasis basis;
  NovikovMatrix differential;
  BaseField field = BaseField::GF2;
  /// False for finite truncations of modules whose support is unbounded; such
  /// complexes are rejected by the Seidel-lemma checker.
  bool finite_support = true;

  GradedComplex() = default;
  GradedComplex(GradedBasis b, BaseField f);
  GradedComplex(GradedBasis b, NovikovMatrix d);

  [[nodiscard]] std::size_t size() const noexcept { return basis.size(); }
};

/// A nonzero entry that violates an identity, with its location.
struct EntryWitness {
  std::string target;
  std::string source;
  NovikovScalar value;

  [[nodiscard]] std::string to_string() const;
};

struct DSquaredReport {
  bool ok = true;
  std::vector<EntryWitness> offending;
};

[[nodiscard]] DSquaredReport check_d_squared(const GradedComplex& complex, const Exponent& cutoff);

/// Witness for a failed gap test: two grades whose distance lies in the
/// forbidden interval.
struct GapReport {
  bool ok = true;
  std::optional<std::pair<Exponent, Exponent>> witness;
  /// Grade pairs whose distance sits exactly on a finite endpoint.
  std::vector<std::pair<Exponent, Exponent>> boundary_pairs;
};

[[nodiscard]] GapReport gap_report(const std::vector<Exponent>& grades, const OrderInterval& forbidden);
/// Cross-gap between two supports: |r - s| for r in lhs and s in rhs.
[[nodiscard]] GapReport cross_gap_report(const std::vector<Exponent>& lhs, const std::vector<Exponent>& rhs,
                                         const OrderInterval& forbidden);
[[nodiscard]] bool gap_check(const GradedBasis& basis, const OrderInterval& forbidden);

struct MapOrder {
  OrderInterval order;
  bool positive = true;
};

/// Closed hull of all term shifts and positivity of every exponent. An empty
/// map reports [+inf, +inf) and positive. A truncated entry makes the upper
/// end +inf since its tail is unknown.
[[nodiscard]] MapOrder map_order(const NovikovMatrix& f);

struct SplitDifferential {
  NovikovMatrix low;
  NovikovMatrix high;
};

/// Terms with shift < eps go low, shift >= 2 eps go high. Throws GapViolation
/// naming the first term with shift in [eps, 2 eps).
[[nodiscard]] SplitDifferential split_map(const NovikovMatrix& f, const Exponent& eps);
[[nodiscard]] SplitDifferential split_differential(const GradedComplex& complex, const Exponent& eps);

struct HomologyOptions {
  /// When set, equal-valuation pivot ties are broken by a seeded random
  /// permutation of the basis instead of basis order.
  std::optional<std::uint64_t> tie_break_seed;
  /// Skip the d^2 = 0 precondition check.
  bool assume_differential = false;
};

struct HomologyResult {
  std::size_t rank = 0;
  std::size_t differential_rank = 0;
  /// Cycles (as label -> coefficient) whose classes form a basis of homology.
  std::vector<std::vector<std::pair<std::string, NovikovScalar>>> representatives;
  /// False when the arithmetic window was narrower than the requested cutoff
  /// or an input term at or beyond the cutoff was dropped.
  bool exact = true;
};

/// Homology over the Novikov field modulo t^cutoff: dim - 2 rank(d).
[[nodiscard]] HomologyResult homology_rank(const GradedComplex& complex, const Exponent& cutoff,
                                           const HomologyOptions& options = {});

/// Throws NotAChainMap with the worst (lowest-valuation) offending entry when
/// f d_A != d_B f modulo t^cutoff.
void require_chain_map(const GradedComplex& a, const GradedComplex& b, const NovikovMatrix& f,
                       const Exponent& cutoff);

/// Cone with basis A (labels prefixed "s:") then B (prefixed "t:") and
/// differential [[d_A, 0], [f, -d_B]].
[[nodiscard]] GradedComplex mapping_cone(const GradedComplex& a, const GradedComplex& b, const NovikovMatrix& f,
                                         const Exponent& cutoff);

[[nodiscard]] bool is_quasi_iso(const GradedComplex& a, const GradedComplex& b, const NovikovMatrix& f,
                                const Exponent& cutoff, const HomologyOptions& options = {});

}  // namespace novikov

#endif  // NOVIKOV_GRADED_COMPLEX_HPP
