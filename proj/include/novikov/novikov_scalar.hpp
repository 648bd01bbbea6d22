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

#ifndef NOVIKOV_NOVIKOV_SCALAR_HPP
#define NOVIKOV_NOVIKOV_SCALAR_HPP

#include <compare>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "novikov/errors.hpp"
#include "novikov/rational.hpp"

namespace novikov {

/// An exponent of the formal variable t; also used for grades and thresholds.
using Exponent = Rational;

enum class BaseField { GF2, Rationals, Integers };

[[nodiscard]] std::string_view to_string(BaseField field) noexcept;
[[nodiscard]] BaseField parse_base_field(std::string_view text);
[[nodiscard]] constexpr bool is_field(BaseField f) noexcept { return f != BaseField::Integers; }

/// Reduce a coefficient into the canonical representative for the base ring.
/// GF2 coefficients become 0 or 1; Integers rejects non-integral values.
[[nodiscard]] Rational reduce_coefficient(BaseField field, const Rational& value);

/// A rational extended by -inf and +inf, used for valuations, cutoffs and
/// interval endpoints.
class Extended {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  constexpr Extended() noexcept = default;
  Extended(const Rational& value) noexcept : kind_(Kind::Finite), value_(value) {}  // NOLINT
  Extended(std::int64_t value) noexcept : kind_(Kind::Finite), value_(value) {}     // NOLINT

  static Extended pos_inf() noexcept { return Extended(Kind::PosInf); }
  static Extended neg_inf() noexcept { return Extended(Kind::NegInf); }

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  [[nodiscard]] bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  [[nodiscard]] bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }
  /// Precondition: is_finite().
  [[nodiscard]] const Rational& value() const;

  friend bool operator==(const Extended& a, const Extended& b) noexcept {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const Extended& a, const Extended& b) noexcept;

  /// Sum with the convention that +inf absorbs finite values. Adding
  /// opposite infinities throws.
  friend Extended operator+(const Extended& a, const Extended& b);
  friend Extended operator-(const Extended& a) noexcept;

  [[nodiscard]] std::string to_string() const;

 private:
  explicit Extended(Kind kind) noexcept : kind_(kind) {}

  Kind kind_ = Kind::Finite;
  Rational value_{};
};

[[nodiscard]] inline Extended min(const Extended& a, const Extended& b) { return b < a ? b : a; }
[[nodiscard]] inline Extended max(const Extended& a, const Extended& b) { return a < b ? b : a; }

struct Term {
  Exponent exponent;
  Rational coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// A truncated universal Novikov series sum a(r) t^r over a base ring.
///
/// The value represents a coset modulo t^cutoff: terms at or beyond the cutoff
/// are unknown and never stored. Terms are sorted by strictly increasing
/// exponent and carry nonzero coefficients. Instances are immutable.
class NovikovScalar {
 public:
  explicit NovikovScalar(BaseField field = BaseField::GF2) noexcept : field_(field) {}

  /// Normalizes: merges equal exponents, reduces coefficients, drops zeros and
  /// every term with exponent >= cutoff.
  NovikovScalar(BaseField field, std::vector<Term> terms, Extended cutoff = Extended::pos_inf());

  static NovikovScalar zero(BaseField field) { return NovikovScalar(field); }
  static NovikovScalar one(BaseField field) { return monomial(field, Exponent(0)); }
  static NovikovScalar monomial(BaseField field, const Exponent& exponent, const Rational& coeff = Rational(1));

  [[nodiscard]] BaseField field() const noexcept { return field_; }
  [[nodiscard]] std::span<const Term> terms() const noexcept { return terms_; }
  [[nodiscard]] const Extended& cutoff() const noexcept { return cutoff_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] bool is_exact() const noexcept { return cutoff_.is_pos_inf(); }
  [[nodiscard]] bool is_monomial() const noexcept { return terms_.size() == 1; }

  /// Smallest exponent with nonzero coefficient; +inf for zero.
  [[nodiscard]] Extended valuation() const noexcept;
  /// Lower bound on the true valuation: the valuation if known nonzero,
  /// otherwise the cutoff.
  [[nodiscard]] Extended valuation_bound() const noexcept;
  /// Coefficient of t^e, zero when absent. Throws if e >= cutoff.
  [[nodiscard]] Rational coefficient(const Exponent& e) const;

  /// Lower the cutoff to min(cutoff, new_cutoff).
  [[nodiscard]] NovikovScalar truncated(const Extended& new_cutoff) const;
  /// Multiply by t^shift (exact; shifts the cutoff too).
  [[nodiscard]] NovikovScalar shifted(const Exponent& shift) const;
  [[nodiscard]] NovikovScalar scaled(const Rational& c) const;

  /// True when a and b agree on every exponent below min of both cutoffs.
  [[nodiscard]] bool congruent(const NovikovScalar& other) const;

  NovikovScalar operator-() const;
  friend NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b);
  friend NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b);
  friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b);

  /// Structural equality (same terms and same cutoff).
  friend bool operator==(const NovikovScalar& a, const NovikovScalar& b) noexcept {
    return a.field_ == b.field_ && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
  }

  [[nodiscard]] std::string to_string() const;

 private:
  BaseField field_;
  std::vector<Term> terms_;
  Extended cutoff_ = Extended::pos_inf();
};

// Named operations. They mirror the operators above and are what the rest of
// the library calls when the intent should be explicit.

/// Coefficient-wise sum; cutoff = min of cutoffs. Throws FieldMismatch.
[[nodiscard]] NovikovScalar nv_add(const NovikovScalar& a, const NovikovScalar& b);
/// Convolution; cutoff = min(cutoff_a + val(b), cutoff_b + val(a)), with the
/// valuation of a truncated zero bounded below by its cutoff.
[[nodiscard]] NovikovScalar nv_mul(const NovikovScalar& a, const NovikovScalar& b);
[[nodiscard]] Extended nv_valuation(const NovikovScalar& a) noexcept;

/// Inverse over the Novikov field, correct modulo t^target_cutoff.
///
/// Factors a = c t^v (1 + u) with val(u) > 0 and sums the geometric series in
/// u. Requires cutoff(a) >= target_cutoff + 2 val(a); the product a * inverse
/// is then 1 modulo t^(target_cutoff + val(a)). An exact monomial inverts
/// exactly (the result has cutoff +inf).
[[nodiscard]] NovikovScalar nv_invert(const NovikovScalar& a, const Exponent& target_cutoff);

/// a / b using nv_invert at the best target b's cutoff allows (or `fallback`
/// when b is exact and not a monomial).
[[nodiscard]] NovikovScalar nv_divide(const NovikovScalar& a, const NovikovScalar& b, const Exponent& fallback);

}  // namespace novikov

#endif  // NOVIKOV_NOVIKOV_SCALAR_HPP
