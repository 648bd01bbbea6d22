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

#ifndef NOVIKOV_NOVIKOV_LINALG_HPP
#define NOVIKOV_NOVIKOV_LINALG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "novikov/novikov_scalar.hpp"

namespace novikov {

class NovikovMatrix;

/// Dense row-major matrix of Novikov scalars, the working format for
/// elimination.
class DenseNovikov {
 public:
  DenseNovikov(std::size_t rows, std::size_t cols, BaseField field);
  static DenseNovikov from_sparse(const NovikovMatrix& m);
  static DenseNovikov identity(std::size_t n, BaseField field);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] BaseField field() const noexcept { return field_; }
  NovikovScalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const NovikovScalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Truncate every entry to the cutoff; returns true if any known term was
  /// dropped in the process.
  bool truncate_all(const Extended& cutoff);
  /// Smallest cutoff of any entry.
  [[nodiscard]] Extended window() const;

  /// col_dst -= factor * col_src
  void column_axpy(std::size_t dst, std::size_t src, const NovikovScalar& factor);

 private:
  std::size_t rows_;
  std::size_t cols_;
  BaseField field_;
  std::vector<NovikovScalar> data_;
};

/// Order used to break ties between pivot candidates of equal valuation.
/// Lower rank wins; the default is basis order.
struct PivotOrder {
  std::vector<std::size_t> row_rank;
  std::vector<std::size_t> col_rank;

  static PivotOrder natural(std::size_t rows, std::size_t cols);
  static PivotOrder shuffled(std::size_t rows, std::size_t cols, std::uint64_t seed);
};

struct ColumnReduction {
  DenseNovikov reduced;    ///< R = M V
  DenseNovikov transform;  ///< V (identity when not tracked)
  /// (row, col) in the order the pivots were chosen.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  /// Columns never pivoted; they are zero in R, so V's columns there span ker M.
  std::vector<std::size_t> free_columns;
};

/// Column elimination with global minimal-valuation pivoting.
///
/// Choosing the global minimum keeps every elimination factor of valuation
/// >= 0, so the absolute precision of R never drops below the input window.
/// With `jordan` the pivot row is also cleared in previously pivoted columns,
/// which turns R into a monomial matrix for invertible square input.
[[nodiscard]] ColumnReduction column_reduce(DenseNovikov m, const PivotOrder& order, const Exponent& cutoff,
                                            bool track_transform, bool jordan = false);

struct InverseResult {
  std::optional<DenseNovikov> inverse;
  /// Nonzero kernel vector when singular modulo the cutoff.
  std::vector<NovikovScalar> kernel_witness;
};

/// Inverse of a square matrix modulo t^cutoff.
[[nodiscard]] InverseResult invert(const DenseNovikov& m, const Exponent& cutoff);

}  // namespace novikov

#endif  // NOVIKOV_NOVIKOV_LINALG_HPP
