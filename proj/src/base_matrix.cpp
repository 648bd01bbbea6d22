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

#include "novikov/base_matrix.hpp"

#include <algorithm>
#include <numeric>

#include "novikov/errors.hpp"

namespace novikov {

namespace {

struct Echelon {
  BaseMatrix m;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form.
Echelon rref(BaseMatrix m) {
  if (!is_field(m.field)) throw NotInvertible("base-field elimination needs a field");
  for (auto& x : m.data) x = reduce_coefficient(m.field, x);
  Echelon out{std::move(m), {}};
  BaseMatrix& a = out.m;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols && row < a.rows; ++c) {
    std::size_t p = row;
    while (p < a.rows && a(p, c).sign() == 0) ++p;
    if (p == a.rows) continue;
    for (std::size_t k = 0; k < a.cols; ++k) std::swap(a(p, k), a(row, k));
    const Rational inv = Rational(1) / a(row, c);
    for (std::size_t k = 0; k < a.cols; ++k) a(row, k) = reduce_coefficient(a.field, a(row, k) * inv);
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (r == row || a(r, c).sign() == 0) continue;
      const Rational f = a(r, c);
      for (std::size_t k = 0; k < a.cols; ++k) a(r, k) = reduce_coefficient(a.field, a(r, k) - f * a(row, k));
    }
    out.pivot_cols.push_back(c);
    ++row;
  }
  return out;
}

}  // namespace

std::size_t BaseMatrix::rank() const { return rref(*this).pivot_cols.size(); }

bool BaseMatrix::is_zero() const {
  return std::all_of(data.begin(), data.end(), [this](const Rational& x) {
    return reduce_coefficient(field, x).sign() == 0;
  });
}

std::optional<std::vector<Rational>> BaseMatrix::kernel_vector() const {
  const Echelon e = rref(*this);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = Rational(1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
      v[e.pivot_cols[r]] = reduce_coefficient(field, -e.m(r, free));
    }
    return v;
  }
  return std::nullopt;
}

}  // namespace novikov
