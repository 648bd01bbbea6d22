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

#ifndef NOVIKOV_INTEGER_MATRIX_HPP
#define NOVIKOV_INTEGER_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "novikov/novikov_scalar.hpp"

namespace novikov::classical {

/// Checked int64 arithmetic; overflow throws std::overflow_error.
[[nodiscard]] std::int64_t checked_add(std::int64_t a, std::int64_t b);
[[nodiscard]] std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Integer or GF2 matrix. Over GF2 every entry is kept in {0, 1}.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, BaseField ring);
  static IntMatrix identity(std::size_t n, BaseField ring);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] BaseField ring() const noexcept { return ring_; }

  [[nodiscard]] std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t value);
  void add(std::size_t r, std::size_t c, std::int64_t value);

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] IntMatrix operator*(const IntMatrix& rhs) const;
  [[nodiscard]] IntMatrix operator+(const IntMatrix& rhs) const;
  [[nodiscard]] IntMatrix operator-() const;
  [[nodiscard]] std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;
  /// Columns side by side; row counts must agree.
  [[nodiscard]] IntMatrix hconcat(const IntMatrix& rhs) const;
  [[nodiscard]] IntMatrix column(std::size_t c) const;
  /// Same entries reduced mod 2.
  [[nodiscard]] IntMatrix mod2() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  // row_i += k row_j and the column analogue; swaps.
  void add_row(std::size_t dst, std::size_t src, std::int64_t k);
  void add_col(std::size_t dst, std::size_t src, std::int64_t k);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void negate_row(std::size_t r);
  void negate_col(std::size_t c);

 private:
  [[nodiscard]] std::int64_t normalize(std::int64_t v) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  BaseField ring_ = BaseField::Integers;
  std::vector<std::int64_t> data_;
};

[[nodiscard]] std::int64_t normalize_entry(BaseField ring, std::int64_t v);

/// D = U A V with U, V invertible over the ring and D diagonal, each nonzero
/// diagonal entry positive and dividing the next.
struct SmithForm {
  IntMatrix D;
  IntMatrix U;
  IntMatrix U_inv;
  IntMatrix V;
  std::size_t rank = 0;

  /// Nonzero diagonal entries in order.
  [[nodiscard]] std::vector<std::int64_t> invariant_factors() const;
};

[[nodiscard]] SmithForm smith_normal_form(const IntMatrix& a);

/// Some x with A x = b over the ring, if one exists.
[[nodiscard]] std::optional<std::vector<std::int64_t>> solve(const IntMatrix& a, const std::vector<std::int64_t>& b);

/// Basis of ker A as the columns of the result.
[[nodiscard]] IntMatrix kernel_basis(const IntMatrix& a);

/// True when every column of `sub` lies in the span of the columns of `lattice`.
[[nodiscard]] bool lattice_contains(const IntMatrix& lattice, const IntMatrix& sub);

}  // namespace novikov::classical

#endif  // NOVIKOV_INTEGER_MATRIX_HPP
