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

#include "novikov/integer_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <utility>

#include "novikov/errors.hpp"

namespace novikov::classical {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer matrix overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer matrix overflow");
  return out;
}

std::int64_t normalize_entry(BaseField ring, std::int64_t v) {
  switch (ring) {
    case BaseField::Integers:
      return v;
    case BaseField::GF2:
      return v & 1;
    case BaseField::Rationals:
      break;
  }
  throw InvalidInput("integer matrices take Integers or GF2 coefficients");
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, BaseField ring)
    : rows_(rows), cols_(cols), ring_(ring), data_(rows * cols, 0) {
  (void)normalize_entry(ring, 0);
}

IntMatrix IntMatrix::identity(std::size_t n, BaseField ring) {
  IntMatrix out(n, n, ring);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, 1);
  return out;
}

std::int64_t IntMatrix::normalize(std::int64_t v) const { return normalize_entry(ring_, v); }

void IntMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  if (r >= rows_ || c >= cols_) throw InvalidInput("matrix index out of range");
  data_[r * cols_ + c] = normalize(value);
}

void IntMatrix::add(std::size_t r, std::size_t c, std::int64_t value) {
  set(r, c, checked_add((*this)(r, c), value));
}

bool IntMatrix::is_zero() const {
  for (const auto v : data_) {
    if (v != 0) return false;
  }
  return true;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols_, rows_, ring_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = (*this)(r, c);
  }
  return out;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_ || ring_ != rhs.ring_) throw InvalidInput("matrix product shape or ring mismatch");
  IntMatrix out(rows_, rhs.cols_, ring_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::int64_t a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) {
        const std::int64_t b = rhs(k, c);
        if (b != 0) out.add(r, c, checked_mul(a, b));
      }
    }
  }
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || ring_ != rhs.ring_) {
    throw InvalidInput("matrix sum shape or ring mismatch");
  }
  IntMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = normalize(checked_add(data_[i], rhs.data_[i]));
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out = *this;
  for (auto& v : out.data_) v = normalize(checked_mul(v, -1));
  return out;
}

std::vector<std::int64_t> IntMatrix::apply(const std::vector<std::int64_t>& v) const {
  if (v.size() != cols_) throw InvalidInput("vector length mismatch");
  std::vector<std::int64_t> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = checked_add(acc, checked_mul((*this)(r, c), v[c]));
    out[r] = normalize(acc);
  }
  return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const {
  if (rows_ != rhs.rows_ || ring_ != rhs.ring_) throw InvalidInput("hconcat shape or ring mismatch");
  IntMatrix out(rows_, cols_ + rhs.cols_, ring_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.set(r, c, (*this)(r, c));
    for (std::size_t c = 0; c < rhs.cols_; ++c) out.set(r, cols_ + c, rhs(r, c));
  }
  return out;
}

IntMatrix IntMatrix::column(std::size_t c) const {
  IntMatrix out(rows_, 1, ring_);
  for (std::size_t r = 0; r < rows_; ++r) out.set(r, 0, (*this)(r, c));
  return out;
}

IntMatrix IntMatrix::mod2() const {
  IntMatrix out(rows_, cols_, BaseField::GF2);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] & 1;
  return out;
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, std::int64_t k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c) {
    const std::int64_t s = (*this)(src, c);
    if (s != 0) add(dst, c, checked_mul(k, s));
  }
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, std::int64_t k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::int64_t s = (*this)(r, src);
    if (s != 0) add(r, dst, checked_mul(k, s));
  }
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(data_[r * cols_ + a], data_[r * cols_ + b]);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) set(r, c, checked_mul((*this)(r, c), -1));
}

void IntMatrix::negate_col(std::size_t c) {
  for (std::size_t r = 0; r < rows_; ++r) set(r, c, checked_mul((*this)(r, c), -1));
}

std::vector<std::int64_t> SmithForm::invariant_factors() const {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

namespace {

// Smallest nonzero |entry| in the block [t.., t..].
std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& d, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  std::int64_t best_abs = 0;
  for (std::size_t r = t; r < d.rows(); ++r) {
    for (std::size_t c = t; c < d.cols(); ++c) {
      const std::int64_t v = std::llabs(d(r, c));
      if (v != 0 && (!best || v < best_abs)) {
        best = {r, c};
        best_abs = v;
      }
    }
  }
  return best;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const BaseField ring = a.ring();
  SmithForm s{a, IntMatrix::identity(a.rows(), ring), IntMatrix::identity(a.rows(), ring),
              IntMatrix::identity(a.cols(), ring), 0};
  IntMatrix& d = s.D;

  auto row_swap = [&](std::size_t i, std::size_t j) {
    d.swap_rows(i, j);
    s.U.swap_rows(i, j);
    s.U_inv.swap_cols(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    d.swap_cols(i, j);
    s.V.swap_cols(i, j);
  };
  // row_dst += k row_src
  auto row_add = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    d.add_row(dst, src, k);
    s.U.add_row(dst, src, k);
    s.U_inv.add_col(src, dst, checked_mul(k, -1));
  };
  auto col_add = [&](std::size_t dst, std::size_t src, std::int64_t k) {
    d.add_col(dst, src, k);
    s.V.add_col(dst, src, k);
  };

  const std::size_t n = std::min(d.rows(), d.cols());
  for (std::size_t t = 0; t < n; ++t) {
    const auto start = smallest_entry(d, t);
    if (!start) break;
    row_swap(t, start->first);
    col_swap(t, start->second);
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        row_add(i, t, -(d(i, t) / d(t, t)));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        col_add(j, t, -(d(t, j) / d(t, t)));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // A remainder smaller than the pivot is left in row or column t.
        std::size_t bi = t;
        std::size_t bj = t;
        std::int64_t best = std::llabs(d(t, t));
        for (std::size_t i = t + 1; i < d.rows(); ++i) {
          if (d(i, t) != 0 && std::llabs(d(i, t)) < best) {
            best = std::llabs(d(i, t));
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
          if (d(t, j) != 0 && std::llabs(d(t, j)) < best) {
            best = std::llabs(d(t, j));
            bi = t;
            bj = j;
          }
        }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < d.rows() && !bad_row; ++i) {
        for (std::size_t j = t + 1; j < d.cols(); ++j) {
          if (d(i, j) % d(t, t) != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (!bad_row) break;
      row_add(t, *bad_row, 1);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
      s.U_inv.negate_col(t);
    }
    s.rank = t + 1;
  }
  return s;
}

std::optional<std::vector<std::int64_t>> solve(const IntMatrix& a, const std::vector<std::int64_t>& b) {
  if (b.size() != a.rows()) throw InvalidInput("right-hand side length mismatch");
  const SmithForm s = smith_normal_form(a);
  const std::vector<std::int64_t> c = s.U.apply(b);
  std::vector<std::int64_t> y(a.cols(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.D(i, i) != 0) return std::nullopt;
      y[i] = c[i] / s.D(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V.apply(y);
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  IntMatrix out(a.cols(), a.cols() - s.rank, a.ring());
  for (std::size_t j = s.rank; j < a.cols(); ++j) {
    for (std::size_t r = 0; r < a.cols(); ++r) out.set(r, j - s.rank, s.V(r, j));
  }
  return out;
}

bool lattice_contains(const IntMatrix& lattice, const IntMatrix& sub) {
  if (lattice.rows() != sub.rows()) throw InvalidInput("lattice dimension mismatch");
  for (std::size_t c = 0; c < sub.cols(); ++c) {
    std::vector<std::int64_t> v(sub.rows());
    for (std::size_t r = 0; r < sub.rows(); ++r) v[r] = sub(r, c);
    if (!solve(lattice, v)) return false;
  }
  return true;
}

}  // namespace novikov::classical
