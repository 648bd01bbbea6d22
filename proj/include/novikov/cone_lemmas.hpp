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

#ifndef NOVIKOV_CONE_LEMMAS_HPP
#define NOVIKOV_CONE_LEMMAS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "novikov/base_matrix.hpp"
#include "novikov/graded_complex.hpp"

namespace novikov {

/// C' --b--> C --c--> C'' with h: C' -> C'' a null-homotopy of c o b.
struct ConeData {
  GradedComplex C_prime;
  GradedComplex C;
  GradedComplex C_dprime;
  NovikovMatrix b;
  NovikovMatrix c;
  NovikovMatrix h;
  Exponent epsilon{1};
};

/// Checks that b and c are chain maps and that d''h + hd' = cb modulo the
/// cutoff. Throws InvalidInput, FieldMismatch or NotAChainMap.
void require_cone_structure(const ConeData& data, const Exponent& cutoff);

/// Basis C' (prefix "C':"), C ("C:"), C'' ("C'':") with differential
/// [[d', 0, 0], [b, -d, 0], [-h, c, d'']].
[[nodiscard]] GradedComplex double_cone(const ConeData& data);

struct HypothesisCheck {
  std::string name;
  bool pass = true;
  /// Set whenever pass is false.
  std::string witness;
  /// Inputs sitting exactly on an interval endpoint; informational.
  std::vector<std::string> boundary;
};

struct HypothesisReport {
  /// GAP, POS, ORD1, ORD2, LOW1, LOW2 in this order.
  std::vector<HypothesisCheck> checks;

  [[nodiscard]] bool all_pass() const;
  [[nodiscard]] const HypothesisCheck& get(const std::string& name) const;
  /// Names of the failing hypotheses.
  [[nodiscard]] std::vector<std::string> failures() const;
};

struct DoubleConeResult {
  HypothesisReport report;
  std::size_t cone_rank = 0;
  bool exact = true;
  /// True iff every hypothesis passes and the double cone is acyclic.
  bool conclusion = false;
};

[[nodiscard]] HypothesisReport check_hypotheses(const ConeData& data);
[[nodiscard]] DoubleConeResult double_cone_check(const ConeData& data, const Exponent& cutoff,
                                                 const HomologyOptions& options = {});

/// Base-field matrix of the t^0 coefficients of terms with shift < eps.
/// Throws GapViolation for a term with shift in [eps, 2 eps).
[[nodiscard]] BaseMatrix extract_low(const NovikovMatrix& f, const Exponent& eps);

struct SeidelReport {
  bool finite_support = true;
  bool gap_ok = true;
  std::string gap_witness;
  std::vector<std::string> boundary;
  /// Every term has shift >= 0 and none lies in [eps, 2 eps).
  bool order_ok = true;
  std::string order_witness;
  /// The low part squares to zero.
  bool low_is_differential = true;
  bool low_acyclic = false;
  std::size_t low_rank = 0;
  std::size_t total_rank = 0;
  /// Hypotheses hold (finite support, gap, split, low part acyclic).
  bool hypotheses = false;
  /// Total differential acyclic; only meaningful when hypotheses holds.
  bool conclusion = false;
};

/// Hypothesis failures are reported, not thrown. Rejects complexes whose
/// finite_support flag is false.
[[nodiscard]] SeidelReport verify_seidel(const GradedComplex& d, const Exponent& eps, const Exponent& cutoff,
                                         const HomologyOptions& options = {});

/// Finite model of D = R[x] + R[y] over GF2, d(f(x), g(y)) = (0, (1 - y) f(y)).
struct Counterexample {
  GradedComplex finite;
  /// Coefficients of sum_{n < max_degree} x^n, one per degree.
  std::vector<NovikovScalar> completed_witness;
  int max_degree = 0;
};

/// Generators x^r (r < max_degree - 1) and y^r (r < max_degree) in grade r:
/// the largest subcomplex of D supported in grades below max_degree.
[[nodiscard]] Counterexample build_counterexample(int max_degree);

/// The quotient D / F^q D: generators x^r, y^r with r < q, acyclic for q >= 1.
[[nodiscard]] GradedComplex counterexample_quotient(int q);

struct WitnessCheck {
  bool ok = false;
  std::string detail;
};

/// Applies d to the witness in a model containing all of its terms and checks
/// the result is y^0 modulo grade max_degree; also checks the same identity
/// in Novikov form, (1 + t) * sum t^n = 1 mod t^max_degree.
[[nodiscard]] WitnessCheck check_completion_witness(const Counterexample& ce);

struct InverseLimitReport {
  /// rank H(D / F^q D) for q = 1..Q.
  std::vector<std::size_t> quotient_ranks;
  bool all_acyclic = false;
};

/// F^q D is spanned by generators of grade >= q * step. Requires t^0
/// coefficients and nonnegative shifts (InvalidInput otherwise).
[[nodiscard]] InverseLimitReport verify_inverse_limit(const GradedComplex& d, const Exponent& step, int q_max);

/// rank H(F^p / F^(p+1)) of the double cone for the filtration by total grade
/// (generator grade plus Novikov exponent) >= p eps, for p from the lowest
/// occupied band up to p_max. Pairs are (p, rank).
[[nodiscard]] std::vector<std::pair<int, std::size_t>> filtration_E1(const ConeData& data, int p_max);

/// Largest admissible eps among candidate thresholds built from the shift
/// spectrum and support gaps, or nullopt. data.epsilon is ignored.
[[nodiscard]] std::optional<Exponent> compute_epsilon(const ConeData& data);
/// GAP, ORD1 and ORD2 at the given eps.
[[nodiscard]] bool epsilon_admissible(const ConeData& data, const Exponent& eps);

}  // namespace novikov

#endif  // NOVIKOV_CONE_LEMMAS_HPP
