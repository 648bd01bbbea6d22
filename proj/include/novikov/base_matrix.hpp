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

#ifndef NOVIKOV_BASE_MATRIX_HPP
#define NOVIKOV_BASE_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "novikov/novikov_scalar.hpp"

namespace novikov {

/// Dense matrix over the base field (GF2 or Q), row-major.
struct BaseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  BaseField field = BaseField::GF2;
  std::vector<Rational> data;

  BaseMatrix() = default;
  BaseMatrix(std::size_t r, std::size_t c, BaseField f) : rows(r), cols(c), field(f), data(r * c, Rational(0)) {}

  Rational& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  [[nodiscard]] std::size_t rank() const;
  /// A nonzero vector v with M v = 0, if one exists.
  [[nodiscard]] std::optional<std::vector<Rational>> kernel_vector() const;
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const BaseMatrix&, const BaseMatrix&) = default;
};

}  // namespace novikov

#endif  // NOVIKOV_BASE_MATRIX_HPP
