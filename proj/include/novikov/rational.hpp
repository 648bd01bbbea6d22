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

#ifndef NOVIKOV_RATIONAL_HPP
#define NOVIKOV_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace novikov {

/// Exact rational number on int64 with overflow detection.
///
/// Always kept in lowest terms with a positive denominator, so equality is
/// structural. Any intermediate overflow throws std::overflow_error instead of
/// wrapping silently.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  constexpr Rational(std::int64_t value) noexcept : num_(value) {}  // NOLINT: implicit by design of literals
  Rational(std::int64_t num, std::int64_t den);

  [[nodiscard]] constexpr std::int64_t num() const noexcept { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const noexcept { return den_; }
  [[nodiscard]] constexpr bool is_zero() const noexcept { return num_ == 0; }
  [[nodiscard]] constexpr bool is_integer() const noexcept { return den_ == 1; }
  [[nodiscard]] constexpr int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend constexpr bool operator==(const Rational&, const Rational&) noexcept = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept {
    const __int128 l = static_cast<__int128>(lhs.num_) * rhs.den_;
    const __int128 r = static_cast<__int128>(rhs.num_) * lhs.den_;
    return l <=> r;
  }

  /// Canonical "p/q" form; the denominator is always written.
  [[nodiscard]] std::string to_string() const;
  /// Accepts "p", "p/q" and "-p/q" with optional surrounding whitespace.
  static Rational parse(std::string_view text);

  /// Largest integer not exceeding the value.
  [[nodiscard]] std::int64_t floor() const noexcept;

 private:
  void normalize();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational arithmetic overflow");
  return out;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational arithmetic overflow");
  return out;
}

}  // namespace detail

inline Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  normalize();
}

inline void Rational::normalize() {
  if (den_ < 0) {
    if (num_ == INT64_MIN || den_ == INT64_MIN) throw std::overflow_error("rational arithmetic overflow");
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

inline Rational Rational::operator-() const {
  if (num_ == INT64_MIN) throw std::overflow_error("rational arithmetic overflow");
  Rational out;
  out.num_ = -num_;
  out.den_ = den_;
  return out;
}

inline Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    num_ = detail::checked_add(num_, rhs.num_);
  } else {
    const std::int64_t g = std::gcd(den_, rhs.den_);
    const std::int64_t lhs_scale = rhs.den_ / g;
    const std::int64_t rhs_scale = den_ / g;
    num_ = detail::checked_add(detail::checked_mul(num_, lhs_scale), detail::checked_mul(rhs.num_, rhs_scale));
    den_ = detail::checked_mul(den_, lhs_scale);
  }
  normalize();
  return *this;
}

inline Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

inline Rational& Rational::operator*=(const Rational& rhs) {
  // cross-reduce first to keep intermediates small
  const std::int64_t g1 = std::gcd(num_, rhs.den_);
  const std::int64_t g2 = std::gcd(rhs.num_, den_);
  const std::int64_t a = g1 > 1 ? num_ / g1 : num_;
  const std::int64_t d = g1 > 1 ? rhs.den_ / g1 : rhs.den_;
  const std::int64_t c = g2 > 1 ? rhs.num_ / g2 : rhs.num_;
  const std::int64_t b = g2 > 1 ? den_ / g2 : den_;
  num_ = detail::checked_mul(a, c);
  den_ = detail::checked_mul(b, d);
  normalize();
  return *this;
}

inline Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("rational division by zero");
  Rational inv;
  inv.num_ = rhs.den_;
  inv.den_ = rhs.num_;
  inv.normalize();
  return *this *= inv;
}

inline std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

inline std::string Rational::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

}  // namespace novikov

template <>
struct std::hash<novikov::Rational> {
  std::size_t operator()(const novikov::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.num()) * 1000003u ^ std::hash<std::int64_t>{}(r.den());
  }
};

#endif  // NOVIKOV_RATIONAL_HPP
