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

#ifndef NOVIKOV_MORSE_FLOER_MODEL_HPP
#define NOVIKOV_MORSE_FLOER_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "novikov/base_matrix.hpp"
#include "novikov/cone_lemmas.hpp"
#include "novikov/graded_complex.hpp"

namespace novikov::morse {

struct FixedPoint {
  std::string label;
  std::optional<Exponent> action;
};

/// Labels are unique. When every point carries an action, the actions become
/// grades; otherwise everything sits in grade 0.
struct FixedPointSet {
  std::vector<FixedPoint> points;

  [[nodiscard]] bool has_actions() const;
};

/// Fiber sphere S^k with a perfect Morse function: a minimum (index 0) and a
/// maximum (index k).
struct MorseFiber {
  int k = 1;
};

struct MorseFloerInstance {
  FixedPointSet fix;
  MorseFiber fiber;
  GradedBasis A;
  GradedBasis A_prime;
  /// (x, min) then (x, max) for each fixed point x, labelled "x.min", "x.max".
  GradedBasis A_dprime;
  BaseMatrix c0;
  BaseMatrix h0;
  bool action_grades = false;
};

/// c0 sends x to (x, max), h0 sends x to (x, min); grades are shared across
/// each fiber pair so both maps preserve grade.
[[nodiscard]] MorseFloerInstance build_intersection(const FixedPointSet& fix, const MorseFiber& fiber);

enum class Mutation { None, Low2, Gap, Pos };

[[nodiscard]] std::string to_string(Mutation m);
[[nodiscard]] Mutation parse_mutation(const std::string& text);

struct SynthesisParams {
  /// 0 gives zero high parts; 1..3 increase the density of random terms.
  int richness = 1;
  Mutation mutation = Mutation::None;
};

/// Synthetic GF2 cone data whose low parts are exactly (h0, c0) and whose
/// high parts are random positive terms of shift >= 2 eps. All structural
/// identities hold exactly. Mutations break exactly one hypothesis:
///   Low2: one point is isolated and dropped from h0.
///   Gap:  one (x, min) grade moves up by eps/2.
///   Pos:  C'' is conjugated by an automorphism with a t^(-eps) term; needs
///         action grades and at least two fixed points.
[[nodiscard]] ConeData synthesize_cone_data(const MorseFloerInstance& instance, const Exponent& eps,
                                            std::uint64_t seed, const SynthesisParams& params = {});

struct PipelineReport {
  DoubleConeResult check;
  std::size_t rank_C_prime = 0;
  std::size_t rank_C = 0;
  std::size_t rank_cone_b = 0;
  std::size_t rank_C_dprime = 0;
  /// rank H(cone b) == rank H(C'').
  bool ranks_agree = false;
  /// Hypotheses pass, double cone acyclic, ranks agree.
  bool pass = false;
};

[[nodiscard]] PipelineReport run_theorem_pipeline(const MorseFloerInstance& instance, const Exponent& eps,
                                                  const Exponent& cutoff, std::uint64_t seed,
                                                  const SynthesisParams& params = {},
                                                  const HomologyOptions& options = {});

/// Parameters of one generated instance, as drawn by the sweeps.
struct GeneratorConfig {
  int fix_count = 2;
  int fiber_dim = 1;
  Exponent epsilon{1};
  int richness = 1;
  std::uint64_t seed = 0;
  Mutation mutation = Mutation::None;
  bool action_grades = false;
};

/// Fixed points "p0", "p1", ...; with action grades the actions are distinct
/// multiples of 5 eps.
[[nodiscard]] FixedPointSet make_fixed_points(const GeneratorConfig& config);
[[nodiscard]] ConeData generate_cone_data(const GeneratorConfig& config);

/// Draws a config from a seed: |fix| <= 6, k <= 3, richness <= 3. Pos
/// mutations force |fix| >= 2 and action grades.
[[nodiscard]] GeneratorConfig random_config(std::uint64_t seed, Mutation mutation, const Exponent& eps);

/// Complex with acyclic low part and gap [eps, 2 eps): clumps of width < eps/2
/// spaced >= 3 eps apart, each carrying a perfect matching with t^0
/// coefficients, conjugated by id + N with N positive of shift >= 2 eps.
[[nodiscard]] GradedComplex random_seidel_instance(std::uint64_t seed, const Exponent& eps);

/// Random complex d = G D G^{-1} over the field, with D a random partial
/// matching of monomials and G unipotent; rank d equals the matching size.
[[nodiscard]] GradedComplex random_floer_complex(std::uint64_t seed, std::size_t size, BaseField field);

}  // namespace novikov::morse

#endif  // NOVIKOV_MORSE_FLOER_MODEL_HPP
