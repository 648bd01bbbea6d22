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

#ifndef NOVIKOV_CLI_COMMANDS_HPP
#define NOVIKOV_CLI_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "novikov/morse_floer_model.hpp"
#include "novikov/novikov_scalar.hpp"

namespace novikov::cli {

enum class OutputFormat { Text, Json };
enum class GysinMode { Classical, Quantum, Morse };
enum class SweepKind { DoubleCone, Seidel };

/// Exit codes shared by every subcommand.
inline constexpr int kExitPass = 0;
inline constexpr int kExitHypothesisFailure = 1;
inline constexpr int kExitInputError = 2;

struct RunConfig {
  std::vector<std::string> inputs;
  /// Explicit --cutoff; otherwise the file default, then the environment.
  std::optional<Exponent> cutoff;
  std::optional<Exponent> epsilon;
  /// Coefficients; GF2 when unset, except Integers for classical models.
  std::optional<BaseField> field;
  OutputFormat format = OutputFormat::Text;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> tie_break_seed;

  // gysin
  GysinMode mode = GysinMode::Classical;
  std::string model = "hopf_s1";
  int n = 2;
  int fix_count = 2;
  int fiber_dim = 1;
  int richness = 1;
  morse::Mutation mutation = morse::Mutation::None;
  bool action_grades = false;

  // counterexample
  int max_degree = 8;
  std::optional<std::string> write_path;

  // sweep
  SweepKind sweep_kind = SweepKind::DoubleCone;
  std::size_t count = 20;
  int jobs = 0;
};

/// Environment variable consulted when neither the flag nor the input file
/// fixes a cutoff.
inline constexpr const char* kCutoffEnv = "NOVIKOV_CONE_DEFAULT_CUTOFF";
inline constexpr std::int64_t kBuiltinCutoff = 12;

/// --cutoff, then the file default, then the environment, then 12. Throws
/// InvalidInput unless the result is positive.
[[nodiscard]] Exponent resolve_cutoff(const RunConfig& config, const std::optional<Exponent>& file_default);
[[nodiscard]] Exponent parse_exponent(const std::string& text);

// Each command writes its report to `out`, diagnostics to `err`, and returns
// the exit code. Input errors are caught and reported with exit code 2.
int cmd_homology(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_cone_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_gysin(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_counterexample(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace novikov::cli

#endif  // NOVIKOV_CLI_COMMANDS_HPP
