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

#ifndef NOVIKOV_QUANTUM_GYSIN_HPP
#define NOVIKOV_QUANTUM_GYSIN_HPP

#include <optional>
#include <vector>

#include "novikov/graded_complex.hpp"

namespace novikov::quantum {

/// Hyperplane cap operator on the quantum homology of CP^(n-1), normalized so
/// that H^n = t id: H e_i = e_(i+1) for i < n - 1 and H e_(n-1) = t e_0.
struct QuantumModule {
  int n = 2;
  /// e_0 .. e_(n-1), grade 0, hdeg 2 (n - 1 - i).
  GradedBasis basis;
  NovikovMatrix H;
};

/// Throws InvalidInput for n < 2 and Error if H^n != t id.
[[nodiscard]] QuantumModule cpn_cap(int n);

/// f composed with itself k times (k >= 0).
[[nodiscard]] NovikovMatrix matrix_power(const NovikovMatrix& f, int k);

/// An operator on a stand-in Floer complex, of homological degree `shift`.
struct EulerAction {
  GradedComplex complex;
  NovikovMatrix op;
  int shift = 0;
};

/// Validates that op is a chain map on the complex modulo the cutoff.
[[nodiscard]] EulerAction make_action(GradedComplex complex, NovikovMatrix op, int shift, const Exponent& cutoff);

/// Zero-differential complex on the module basis carrying H.
[[nodiscard]] EulerAction cap_action(const QuantumModule& q);

struct InvertibilityResult {
  bool invertible = false;
  std::optional<NovikovMatrix> inverse;
  std::vector<NovikovScalar> kernel_witness;
};

[[nodiscard]] InvertibilityResult invertibility_check(const EulerAction& e, const Exponent& cutoff);

/// rank H(cone(E: CF -> CF)).
[[nodiscard]] std::size_t gysin_cone_prediction(const EulerAction& e, const Exponent& cutoff,
                                                const HomologyOptions& options = {});

/// E + nu t^((k+1) lambda) id. Throws InvalidInput unless lambda > 0 and nu is
/// 0 or 1.
[[nodiscard]] EulerAction borderline_operator(const EulerAction& e, int nu, const Exponent& lambda, int k);

}  // namespace novikov::quantum

#endif  // NOVIKOV_QUANTUM_GYSIN_HPP
