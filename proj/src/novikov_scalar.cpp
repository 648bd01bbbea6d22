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

#include "novikov/novikov_scalar.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>
#include <sstream>

namespace novikov {

// ---------------------------------------------------------------- Rational

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [](std::string_view s) {
    std::int64_t out = 0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || first == s.data() + s.size()) {
      throw std::invalid_argument("malformed rational '" + std::string(s) + "'");
    }
    return out;
  };
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(trim(text.substr(0, slash))), parse_int(trim(text.substr(slash + 1))));
}

std::ostream& operator<<(std::ostream& os, const Rational& value) {
  os << value.num();
  if (value.den() != 1) os << '/' << value.den();
  return os;
}

// ---------------------------------------------------------------- BaseField

std::string_view to_string(BaseField field) noexcept {
  switch (field) {
    case BaseField::GF2:
      return "GF2";
    case BaseField::Rationals:
      return "Rationals";
    case BaseField::Integers:
      return "Integers";
  }
  return "?";
}

BaseField parse_base_field(std::string_view text) {
  if (text == "GF2") return BaseField::GF2;
  if (text == "Rationals" || text == "Q") return BaseField::Rationals;
  if (text == "Integers" || text == "Z") return BaseField::Integers;
  throw InvalidInput("unknown base field '" + std::string(text) + "'");
}

Rational reduce_coefficient(BaseField field, const Rational& value) {
  switch (field) {
    case BaseField::GF2: {
      if (value.den() % 2 == 0) throw InvalidInput("coefficient " + value.to_string() + " is not defined in GF2");
      return Rational(value.num() % 2 != 0 ? 1 : 0);
    }
    case BaseField::Integers:
      if (!value.is_integer()) throw InvalidInput("coefficient " + value.to_string() + " is not an integer");
      return value;
    case BaseField::Rationals:
      return value;
  }
  return value;
}

// ---------------------------------------------------------------- Extended

const Rational& Extended::value() const {
  if (kind_ != Kind::Finite) throw std::logic_error("value() of an infinite bound");
  return value_;
}

std::strong_ordering operator<=>(const Extended& a, const Extended& b) noexcept {
  if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  if (a.kind_ != Extended::Kind::Finite) return std::strong_ordering::equal;
  return a.value_ <=> b.value_;
}

Extended operator+(const Extended& a, const Extended& b) {
  if (a.is_finite() && b.is_finite()) return Extended(a.value_ + b.value_);
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw std::domain_error("+inf + -inf is undefined");
  }
  return (a.is_finite() ? b : a);
}

Extended operator-(const Extended& a) noexcept {
  if (a.is_pos_inf()) return Extended::neg_inf();
  if (a.is_neg_inf()) return Extended::pos_inf();
  return Extended(-a.value_);
}

std::string Extended::to_string() const {
  switch (kind_) {
    case Kind::NegInf:
      return "-inf";
    case Kind::PosInf:
      return "+inf";
    case Kind::Finite:
      break;
  }
  std::ostringstream os;
  os << value_;
  return os.str();
}

// ---------------------------------------------------------------- NovikovScalar

namespace {

void check_same_field(const NovikovScalar& a, const NovikovScalar& b) {
  if (a.field() != b.field()) {
    throw FieldMismatch("mismatched base fields: " + std::string(to_string(a.field())) + " vs " +
                        std::string(to_string(b.field())));
  }
}

/// Sorted, merged, reduced, truncated.
std::vector<Term> canonical_terms(BaseField field, std::vector<Term> terms, const Extended& cutoff) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.exponent < y.exponent; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& term : terms) {
    if (!(Extended(term.exponent) < cutoff)) break;
    if (!out.empty() && out.back().exponent == term.exponent) {
      out.back().coeff += term.coeff;
    } else {
      out.push_back(std::move(term));
    }
  }
  std::vector<Term> result;
  result.reserve(out.size());
  for (auto& term : out) {
    Rational c = reduce_coefficient(field, term.coeff);
    if (!c.is_zero()) result.push_back(Term{term.exponent, c});
  }
  return result;
}

}  // namespace

NovikovScalar::NovikovScalar(BaseField field, std::vector<Term> terms, Extended cutoff)
    : field_(field), cutoff_(std::move(cutoff)) {
  if (cutoff_.is_neg_inf()) throw InvalidInput("a scalar cutoff cannot be -inf");
  terms_ = canonical_terms(field_, std::move(terms), cutoff_);
}

NovikovScalar NovikovScalar::monomial(BaseField field, const Exponent& exponent, const Rational& coeff) {
  return NovikovScalar(field, {Term{exponent, coeff}});
}

Extended NovikovScalar::valuation() const noexcept {
  if (terms_.empty()) return Extended::pos_inf();
  return Extended(terms_.front().exponent);
}

Extended NovikovScalar::valuation_bound() const noexcept {
  if (terms_.empty()) return cutoff_;
  return Extended(terms_.front().exponent);
}

Rational NovikovScalar::coefficient(const Exponent& e) const {
  if (!(Extended(e) < cutoff_)) {
    throw PrecisionError("coefficient of t^" + e.to_string() + " is beyond the cutoff " + cutoff_.to_string());
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponent& x) { return t.exponent < x; });
  if (it != terms_.end() && it->exponent == e) return it->coeff;
  return Rational(0);
}

NovikovScalar NovikovScalar::truncated(const Extended& new_cutoff) const {
  if (!(new_cutoff < cutoff_)) return *this;
  NovikovScalar out(field_);
  out.cutoff_ = new_cutoff;
  for (const auto& t : terms_) {
    if (!(Extended(t.exponent) < new_cutoff)) break;
    out.terms_.push_back(t);
  }
  return out;
}

NovikovScalar NovikovScalar::shifted(const Exponent& shift) const {
  NovikovScalar out(field_);
  out.cutoff_ = cutoff_ + Extended(shift);
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back(Term{t.exponent + shift, t.coeff});
  return out;
}

NovikovScalar NovikovScalar::scaled(const Rational& c) const {
  std::vector<Term> terms(terms_.begin(), terms_.end());
  for (auto& t : terms) t.coeff *= c;
  return NovikovScalar(field_, std::move(terms), cutoff_);
}

bool NovikovScalar::congruent(const NovikovScalar& other) const {
  check_same_field(*this, other);
  const Extended window = min(cutoff_, other.cutoff_);
  return truncated(window).terms_ == other.truncated(window).terms_;
}

NovikovScalar NovikovScalar::operator-() const {
  if (field_ == BaseField::GF2) return *this;
  NovikovScalar out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b) {
  check_same_field(a, b);
  const Extended cutoff = min(a.cutoff_, b.cutoff_);
  std::vector<Term> merged;
  merged.reserve(a.terms_.size() + b.terms_.size());
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  while (ia != a.terms_.end() || ib != b.terms_.end()) {
    const Term* next = nullptr;
    if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->exponent < ib->exponent)) {
      next = &*ia++;
      if (!(Extended(next->exponent) < cutoff)) break;
      merged.push_back(*next);
    } else if (ia == a.terms_.end() || ib->exponent < ia->exponent) {
      next = &*ib++;
      if (!(Extended(next->exponent) < cutoff)) break;
      merged.push_back(*next);
    } else {
      if (!(Extended(ia->exponent) < cutoff)) break;
      Rational c = reduce_coefficient(a.field_, ia->coeff + ib->coeff);
      if (!c.is_zero()) merged.push_back(Term{ia->exponent, c});
      ++ia;
      ++ib;
    }
  }
  NovikovScalar out(a.field_);
  out.cutoff_ = cutoff;
  out.terms_ = std::move(merged);
  return out;
}

NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b) { return a + (-b); }

NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b) {
  check_same_field(a, b);
  if ((a.is_zero() && a.is_exact()) || (b.is_zero() && b.is_exact())) return NovikovScalar::zero(a.field_);
  const Extended cutoff = min(a.cutoff_ + b.valuation_bound(), b.cutoff_ + a.valuation_bound());
  std::vector<Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      Exponent e = x.exponent + y.exponent;
      if (!(Extended(e) < cutoff)) break;  // b's terms are increasing
      products.push_back(Term{std::move(e), x.coeff * y.coeff});
    }
  }
  return NovikovScalar(a.field_, std::move(products), cutoff);
}

std::string NovikovScalar::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    if (!first) {
      if (c.sign() < 0) {
        os << " - ";
        c = -c;
      } else {
        os << " + ";
      }
    } else if (c.sign() < 0) {
      os << "-";
      c = -c;
    }
    first = false;
    if (c != Rational(1)) os << c << "*";
    os << "t^";
    if (t.exponent.is_integer() && t.exponent.sign() >= 0) {
      os << t.exponent;
    } else {
      os << "(" << t.exponent << ")";
    }
  }
  if (first) os << "0";
  if (cutoff_.is_finite()) os << " + O(t^" << cutoff_.to_string() << ")";
  return os.str();
}

// ---------------------------------------------------------------- named ops

NovikovScalar nv_add(const NovikovScalar& a, const NovikovScalar& b) { return a + b; }

NovikovScalar nv_mul(const NovikovScalar& a, const NovikovScalar& b) { return a * b; }

Extended nv_valuation(const NovikovScalar& a) noexcept { return a.valuation(); }

NovikovScalar nv_invert(const NovikovScalar& a, const Exponent& target_cutoff) {
  if (!is_field(a.field())) throw NotInvertible("cannot invert over Integers: not a field");
  if (a.is_zero()) throw NotInvertible("cannot invert zero (modulo " + a.cutoff().to_string() + ")");
  const Term& lead = a.terms().front();
  const Exponent v = lead.exponent;
  const Rational c_inv = Rational(1) / lead.coeff;
  if (a.is_monomial() && a.is_exact()) return NovikovScalar::monomial(a.field(), -v, c_inv);

  if (a.cutoff() < Extended(target_cutoff + v + v)) {
    throw PrecisionError("nv_invert: cutoff " + a.cutoff().to_string() + " < target " + target_cutoff.to_string() +
                         " + 2*val " + v.to_string());
  }
  // a = c t^v (1 + u), val(u) > 0
  std::vector<Term> u_terms;
  u_terms.reserve(a.terms().size());
  for (std::size_t i = 1; i < a.terms().size(); ++i) {
    const Term& t = a.terms()[i];
    u_terms.push_back(Term{t.exponent - v, -(t.coeff * c_inv)});  // -u
  }
  const NovikovScalar minus_u(a.field(), std::move(u_terms), a.cutoff() + Extended(-v));
  const Extended window(target_cutoff + v);

  NovikovScalar sum = NovikovScalar::one(a.field()).truncated(window);
  NovikovScalar power = sum;
  while (true) {
    power = (power * minus_u).truncated(window);
    if (power.is_zero()) break;
    sum = sum + power;
  }
  return sum.shifted(-v).scaled(c_inv).truncated(Extended(target_cutoff));
}

NovikovScalar nv_divide(const NovikovScalar& a, const NovikovScalar& b, const Exponent& fallback) {
  if (b.is_monomial() && b.is_exact()) return a * nv_invert(b, Exponent(0));
  if (b.is_zero()) throw NotInvertible("division by zero (modulo " + b.cutoff().to_string() + ")");
  const Exponent v = b.valuation().value();
  const Exponent target = b.is_exact() ? fallback : b.cutoff().value() - v - v;
  return a * nv_invert(b, target);
}

}  // namespace novikov
