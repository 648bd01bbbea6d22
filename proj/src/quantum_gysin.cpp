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

#include "novikov/quantum_gysin.hpp"

#include "novikov/errors.hpp"
#include "novikov/novikov_linalg.hpp"

namespace novikov::quantum {

namespace {
constexpr BaseField kF = BaseField::GF2;
}

NovikovMatrix matrix_power(const NovikovMatrix& f, int k) {
  if (k < 0) throw InvalidInput("negative matrix power");
  if (f.source().size() != f.target().size()) throw InvalidInput("power of a non-square matrix");
  NovikovMatrix out = NovikovMatrix::identity(f.source(), f.field()).reindexed(f.source(), f.target());
  for (int i = 0; i < k; ++i) out = f.compose(out);
  return out;
}

QuantumModule cpn_cap(int n) {
  if (n < 2) throw InvalidInput("CP^(n-1) cap operator needs n >= 2");
  QuantumModule q;
  q.n = n;
  for (int i = 0; i < n; ++i) q.basis.push_back({"e" + std::to_string(i), Exponent(0), 2 * (n - 1 - i)});
  q.H = NovikovMatrix(q.basis, q.basis, kF);
  for (int i = 0; i + 1 < n; ++i) q.H.set(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i), NovikovScalar::one(kF));
  q.H.set(0, static_cast<std::size_t>(n - 1), NovikovScalar::monomial(kF, Exponent(1)));
  const NovikovMatrix t_id = NovikovMatrix::scalar(q.basis, kF, NovikovScalar::monomial(kF, Exponent(1)));
  if (!(matrix_power(q.H, n) == t_id)) throw Error("H^n != t id");
  return q;
}

EulerAction make_action(GradedComplex complex, NovikovMatrix op, int shift, const Exponent& cutoff) {
  require_chain_map(complex, complex, op, cutoff);
  return {std::move(complex), std::move(op), shift};
}

EulerAction cap_action(const QuantumModule& q) { return {GradedComplex(q.basis, kF), q.H, -2}; }

InvertibilityResult invertibility_check(const EulerAction& e, const Exponent& cutoff) {
  InvertibilityResult out;
  const auto r = invert(DenseNovikov::from_sparse(e.op), cutoff);
  if (!r.inverse) {
    out.kernel_witness = r.kernel_witness;
    return out;
  }
  out.invertible = true;
  NovikovMatrix inv(e.op.target(), e.op.source(), e.op.field());
  for (std::size_t i = 0; i < r.inverse->rows(); ++i) {
    for (std::size_t j = 0; j < r.inverse->cols(); ++j) {
      const NovikovScalar& v = (*r.inverse)(i, j);
      if (!(v.is_zero() && v.is_exact())) inv.set(i, j, v);
    }
  }
  out.inverse = std::move(inv);
  return out;
}

std::size_t gysin_cone_prediction(const EulerAction& e, const Exponent& cutoff, const HomologyOptions& options) {
  return homology_rank(mapping_cone(e.complex, e.complex, e.op, cutoff), cutoff, options).rank;
}

EulerAction borderline_operator(const EulerAction& e, int nu, const Exponent& lambda, int k) {
  if (lambda.sign() <= 0) throw InvalidInput("lambda must be positive");
  if (nu != 0 && nu != 1) throw InvalidInput("nu must be 0 or 1");
  if (nu == 0) return e;
  EulerAction out = e;
  const NovikovScalar bump = NovikovScalar::monomial(e.op.field(), lambda * Exponent(k + 1));
  out.op = e.op + NovikovMatrix::scalar(e.complex.basis, e.op.field(), bump);
  return out;
}

}  // namespace novikov::quantum
