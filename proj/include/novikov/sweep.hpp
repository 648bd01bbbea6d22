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

// Seed sweeps over generated instances. Each sweep has an OpenMP kernel and a
// serial reference; both fill results in seed order.

#ifndef NOVIKOV_SWEEP_HPP
#define NOVIKOV_SWEEP_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "novikov/graded_complex.hpp"
#include "novikov/morse_floer_model.hpp"

namespace novikov {

struct SweepOptions {
  morse::Mutation mutation = morse::Mutation::None;
  Exponent epsilon{1};
  Exponent cutoff{12};
  std::uint64_t first_seed = 0;
  std::size_t count = 0;
  /// Thread count for the OpenMP kernel; 0 keeps the runtime default.
  int jobs = 0;
  /// Also compute the E1 page of the action filtration.
  bool compute_e1 = false;
  HomologyOptions homology;
};

struct DoubleConeOutcome {
  std::uint64_t seed = 0;
  morse::GeneratorConfig config;
  std::vector<std::string> failures;
  std::size_t cone_rank = 0;
  bool exact = true;
  /// Every E1 rank is zero (true when not computed).
  bool e1_zero = true;
  /// Non-empty when generation or checking threw.
  std::string error;

  friend bool operator==(const DoubleConeOutcome& a, const DoubleConeOutcome& b) {
    return a.seed == b.seed && a.failures == b.failures && a.cone_rank == b.cone_rank && a.exact == b.exact &&
           a.e1_zero == b.e1_zero && a.error == b.error;
  }
};

[[nodiscard]] DoubleConeOutcome double_cone_instance(std::uint64_t seed, const SweepOptions& options);
[[nodiscard]] std::vector<DoubleConeOutcome> double_cone_sweep(const SweepOptions& options);
[[nodiscard]] std::vector<DoubleConeOutcome> double_cone_sweep_serial(const SweepOptions& options);

struct SeidelOutcome {
  std::uint64_t seed = 0;
  bool hypotheses = false;
  /// Total rank at each cutoff, in the order given.
  std::vector<std::size_t> total_ranks;
  std::string error;

  friend bool operator==(const SeidelOutcome&, const SeidelOutcome&) = default;
};

[[nodiscard]] SeidelOutcome seidel_instance(std::uint64_t seed, const Exponent& eps,
                                            const std::vector<Exponent>& cutoffs);
[[nodiscard]] std::vector<SeidelOutcome> seidel_sweep(std::uint64_t first_seed, std::size_t count,
                                                      const Exponent& eps, const std::vector<Exponent>& cutoffs,
                                                      int jobs = 0);
[[nodiscard]] std::vector<SeidelOutcome> seidel_sweep_serial(std::uint64_t first_seed, std::size_t count,
                                                             const Exponent& eps,
                                                             const std::vector<Exponent>& cutoffs);

}  // namespace novikov

#endif  // NOVIKOV_SWEEP_HPP
