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

#include "novikov/sweep.hpp"

#include <algorithm>
#include <exception>

#include <omp.h>

#include "novikov/cone_lemmas.hpp"

namespace novikov {

DoubleConeOutcome double_cone_instance(std::uint64_t seed, const SweepOptions& options) {
  DoubleConeOutcome out;
  out.seed = seed;
  try {
    out.config = morse::random_config(seed, options.mutation, options.epsilon);
    const ConeData data = morse::generate_cone_data(out.config);
    const DoubleConeResult r = double_cone_check(data, options.cutoff, options.homology);
    out.failures = r.report.failures();
    out.cone_rank = r.cone_rank;
    out.exact = r.exact;
    if (options.compute_e1) {
      const auto e1 = filtration_E1(data, 40);
      out.e1_zero = std::all_of(e1.begin(), e1.end(), [](const auto& p) { return p.second == 0; });
    }
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::vector<DoubleConeOutcome> double_cone_sweep(const SweepOptions& options) {
  std::vector<DoubleConeOutcome> out(options.count);
  const auto n = static_cast<std::int64_t>(options.count);
  const int jobs = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs) if (jobs > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = double_cone_instance(options.first_seed + static_cast<std::uint64_t>(i), options);
  }
  return out;
}

std::vector<DoubleConeOutcome> double_cone_sweep_serial(const SweepOptions& options) {
  std::vector<DoubleConeOutcome> out;
  out.reserve(options.count);
  for (std::size_t i = 0; i < options.count; ++i) out.push_back(double_cone_instance(options.first_seed + i, options));
  return out;
}

SeidelOutcome seidel_instance(std::uint64_t seed, const Exponent& eps, const std::vector<Exponent>& cutoffs) {
  SeidelOutcome out;
  out.seed = seed;
  try {
    const GradedComplex d = morse::random_seidel_instance(seed, eps);
    bool hypotheses = true;
    for (const auto& cutoff : cutoffs) {
      const SeidelReport r = verify_seidel(d, eps, cutoff);
      hypotheses = hypotheses && r.hypotheses;
      out.total_ranks.push_back(r.total_rank);
    }
    out.hypotheses = hypotheses;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::vector<SeidelOutcome> seidel_sweep(std::uint64_t first_seed, std::size_t count, const Exponent& eps,
                                        const std::vector<Exponent>& cutoffs, int jobs) {
  std::vector<SeidelOutcome> out(count);
  const auto n = static_cast<std::int64_t>(count);
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = seidel_instance(first_seed + static_cast<std::uint64_t>(i), eps, cutoffs);
  }
  return out;
}

std::vector<SeidelOutcome> seidel_sweep_serial(std::uint64_t first_seed, std::size_t count, const Exponent& eps,
                                               const std::vector<Exponent>& cutoffs) {
  std::vector<SeidelOutcome> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(seidel_instance(first_seed + i, eps, cutoffs));
  return out;
}

}  // namespace novikov
