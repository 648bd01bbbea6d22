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

#include "novikov/novikov_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <tuple>

#include "novikov/graded_complex.hpp"

namespace novikov {

DenseNovikov::DenseNovikov(std::size_t rows, std::size_t cols, BaseField field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, NovikovScalar(field)) {}

DenseNovikov DenseNovikov::from_sparse(const NovikovMatrix& m) {
  DenseNovikov out(m.target().size(), m.source().size(), m.field());
  for (const auto& [key, value] : m.entries()) out(key.first, key.second) = value;
  return out;
}

DenseNovikov DenseNovikov::identity(std::size_t n, BaseField field) {
  DenseNovikov out(n, n, field);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = NovikovScalar::one(field);
  return out;
}

bool DenseNovikov::truncate_all(const Extended& cutoff) {
  bool dropped = false;
  for (auto& entry : data_) {
    NovikovScalar t = entry.truncated(cutoff);
    if (t.terms().size() != entry.terms().size()) dropped = true;
    entry = std::move(t);
  }
  return dropped;
}

Extended DenseNovikov::window() const {
  Extended w = Extended::pos_inf();
  for (const auto& entry : data_) w = min(w, entry.cutoff());
  return w;
}

void DenseNovikov::column_axpy(std::size_t dst, std::size_t src, const NovikovScalar& factor) {
  for (std::size_t r = 0; r < rows_; ++r) {
    const NovikovScalar& s = (*this)(r, src);
    if (s.is_zero() && s.is_exact()) continue;
    (*this)(r, dst) = (*this)(r, dst) - factor * s;
  }
}

PivotOrder PivotOrder::natural(std::size_t rows, std::size_t cols) {
  PivotOrder order;
  order.row_rank.resize(rows);
  order.col_rank.resize(cols);
  std::iota(order.row_rank.begin(), order.row_rank.end(), std::size_t{0});
  std::iota(order.col_rank.begin(), order.col_rank.end(), std::size_t{0});
  return order;
}

PivotOrder PivotOrder::shuffled(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  PivotOrder order = natural(rows, cols);
  std::mt19937_64 rng(seed);
  std::shuffle(order.row_rank.begin(), order.row_rank.end(), rng);
  std::shuffle(order.col_rank.begin(), order.col_rank.end(), rng);
  return order;
}

ColumnReduction column_reduce(DenseNovikov m, const PivotOrder& order, const Exponent& cutoff, bool track_transform,
                              bool jordan) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const BaseField field = m.field();
  ColumnReduction out{std::move(m), track_transform ? DenseNovikov::identity(cols, field) : DenseNovikov(0, 0, field),
                      {}, {}};
  DenseNovikov& r_mat = out.reduced;
  std::vector<bool> row_used(rows, false);
  std::vector<bool> col_used(cols, false);

  while (true) {
    std::optional<std::tuple<Extended, std::size_t, std::size_t>> best;
    std::size_t best_r = 0;
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_used[c]) continue;
      for (std::size_t r = 0; r < rows; ++r) {
        if (row_used[r]) continue;
        const NovikovScalar& e = r_mat(r, c);
        if (e.is_zero()) continue;
        auto key = std::make_tuple(e.valuation(), order.col_rank[c], order.row_rank[r]);
        if (!best || key < *best) {
          best = key;
          best_r = r;
          best_c = c;
        }
      }
    }
    if (!best) break;

    const NovikovScalar pivot = r_mat(best_r, best_c);
    for (std::size_t j = 0; j < cols; ++j) {
      if (j == best_c || (!jordan && col_used[j])) continue;
      const NovikovScalar& a = r_mat(best_r, j);
      if (a.is_zero()) continue;
      const NovikovScalar factor = nv_divide(a, pivot, cutoff);
      r_mat.column_axpy(j, best_c, factor);
      // a - (a/p) p vanishes identically; store the exact zero rather than a
      // truncated remainder.
      r_mat(best_r, j) = NovikovScalar::zero(field);
      if (track_transform) out.transform.column_axpy(j, best_c, factor);
    }
    out.pivots.emplace_back(best_r, best_c);
    row_used[best_r] = true;
    col_used[best_c] = true;
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (!col_used[c]) out.free_columns.push_back(c);
  }
  return out;
}

namespace {

InverseResult invert_at(const DenseNovikov& m, const Exponent& work_cutoff) {
  DenseNovikov work = m;
  work.truncate_all(Extended(work_cutoff));
  const std::size_t n = m.rows();
  ColumnReduction red = column_reduce(std::move(work), PivotOrder::natural(n, n), work_cutoff, true, true);
  InverseResult out;
  if (!red.free_columns.empty()) {
    const std::size_t c = red.free_columns.front();
    for (std::size_t i = 0; i < n; ++i) out.kernel_witness.push_back(red.transform(i, c));
    return out;
  }
  DenseNovikov inv(n, n, m.field());
  for (const auto& [r, c] : red.pivots) {
    const NovikovScalar& p = red.reduced(r, c);
    for (std::size_t i = 0; i < n; ++i) {
      const NovikovScalar& v = red.transform(i, c);
      if (v.is_zero() && v.is_exact()) continue;
      inv(i, r) = nv_divide(v, p, work_cutoff);
    }
  }
  out.inverse = std::move(inv);
  return out;
}

}  // namespace

InverseResult invert(const DenseNovikov& m, const Exponent& cutoff) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of a non-square matrix");
  if (!is_field(m.field())) throw NotInvertible("matrix inverse needs a field base");
  // Division by pivots of positive valuation costs precision; widen the
  // working cutoff by the observed deficit until the result reaches `cutoff`.
  Exponent work = cutoff;
  const Extended input_window = m.window();
  for (int attempt = 0; attempt < 8; ++attempt) {
    InverseResult out = invert_at(m, work);
    if (!out.inverse) return out;
    const Extended got = out.inverse->window();
    if (got >= Extended(cutoff) || Extended(work) > input_window) {
      out.inverse->truncate_all(Extended(cutoff));
      return out;
    }
    work = work + (cutoff - got.value());
  }
  InverseResult out = invert_at(m, work);
  if (out.inverse) out.inverse->truncate_all(Extended(cutoff));
  return out;
}

}  // namespace novikov
