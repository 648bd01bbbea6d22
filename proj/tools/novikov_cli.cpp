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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "novikov/cli_commands.hpp"
#include "novikov/errors.hpp"

namespace {

using novikov::cli::RunConfig;

struct RawFlags {
  std::string cutoff;
  std::string epsilon;
  std::string field;
  std::string format = "text";
  std::string mutate = "none";
  std::string mode = "classical";
  std::string kind = "double-cone";
};

void add_common(CLI::App* cmd, RawFlags& raw, RunConfig& config) {
  cmd->add_option("--cutoff", raw.cutoff, "Precision cutoff (rational); falls back to the file, then the environment");
  cmd->add_option("--format", raw.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--tie-break-seed", config.tie_break_seed, "Random pivot tie-break order");
}

void finalize(const RawFlags& raw, RunConfig& config) {
  if (!raw.cutoff.empty()) config.cutoff = novikov::cli::parse_exponent(raw.cutoff);
  if (!raw.epsilon.empty()) config.epsilon = novikov::cli::parse_exponent(raw.epsilon);
  if (!raw.field.empty()) config.field = novikov::parse_base_field(raw.field);
  config.format = raw.format == "json" ? novikov::cli::OutputFormat::Json : novikov::cli::OutputFormat::Text;
  config.mutation = novikov::morse::parse_mutation(raw.mutate);
  if (raw.mode == "quantum") {
    config.mode = novikov::cli::GysinMode::Quantum;
  } else if (raw.mode == "morse") {
    config.mode = novikov::cli::GysinMode::Morse;
  }
  config.sweep_kind = raw.kind == "seidel" ? novikov::cli::SweepKind::Seidel : novikov::cli::SweepKind::DoubleCone;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Novikov-field homology, cone lemmas and Gysin sequences"};
  app.require_subcommand(1);
  RunConfig config;
  RawFlags raw;

  auto* homology = app.add_subcommand("homology", "Homology rank and representatives of a complex file");
  homology->add_option("file", config.inputs, "Complex file")->required();
  add_common(homology, raw, config);

  auto* cone = app.add_subcommand("cone-check", "Double-cone hypotheses and conclusion");
  cone->add_option("file", config.inputs, "Cone data file");
  cone->add_option("--seed", config.seed, "Generate an instance from this seed instead of reading a file");
  cone->add_option("--epsilon", raw.epsilon, "Override epsilon");
  cone->add_option("--mutate", raw.mutate, "Mutation for generated instances")
      ->check(CLI::IsMember({"none", "low2", "gap", "pos"}));
  add_common(cone, raw, config);

  auto* gysin = app.add_subcommand("gysin", "Gysin sequence checks");
  gysin->add_option("--mode", raw.mode, "classical, quantum or morse")
      ->check(CLI::IsMember({"classical", "quantum", "morse"}));
  gysin->add_option("--model", config.model,
                    "Classical model: hopf_s1, hopf_s3, unit_tangent_s2, product:<base>:<k>, custom:<file>");
  gysin->add_option("--field", raw.field, "Coefficients: Integers or GF2 (classical)");
  gysin->add_option("--n", config.n, "Quantum: CP^(n-1)");
  gysin->add_option("--fix-count", config.fix_count, "Morse: number of fixed points");
  gysin->add_option("--fiber-dim", config.fiber_dim, "Morse: fiber sphere dimension");
  gysin->add_option("--epsilon", raw.epsilon, "Morse: epsilon");
  gysin->add_option("--richness", config.richness, "Morse: density of high terms, 0..3");
  gysin->add_option("--seed", config.seed, "Morse: synthesis seed");
  gysin->add_option("--mutate", raw.mutate, "Morse: break one hypothesis")
      ->check(CLI::IsMember({"none", "low2", "gap", "pos"}));
  gysin->add_flag("--action-grades", config.action_grades, "Morse: grade fixed points by action");
  add_common(gysin, raw, config);

  auto* counter = app.add_subcommand("counterexample", "Truncated R[x] + R[y] model");
  counter->add_option("--max-degree", config.max_degree, "Grade bound of the finite model");
  counter->add_option("--write", config.write_path, "Also write the model as a complex file");
  add_common(counter, raw, config);

  auto* sweep = app.add_subcommand("sweep", "Run checks over a range of generator seeds");
  sweep->add_option("--kind", raw.kind, "double-cone or seidel")->check(CLI::IsMember({"double-cone", "seidel"}));
  sweep->add_option("--count", config.count, "Number of seeds");
  sweep->add_option("--seed", config.seed, "First seed");
  sweep->add_option("--epsilon", raw.epsilon, "Epsilon");
  sweep->add_option("--mutate", raw.mutate, "Mutation for double-cone sweeps")
      ->check(CLI::IsMember({"none", "low2", "gap", "pos"}));
  sweep->add_option("--jobs", config.jobs, "Worker threads");
  add_common(sweep, raw, config);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : novikov::cli::kExitInputError;
  }
  try {
    finalize(raw, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return novikov::cli::kExitInputError;
  }

  if (homology->parsed()) return novikov::cli::cmd_homology(config, std::cout, std::cerr);
  if (cone->parsed()) return novikov::cli::cmd_cone_check(config, std::cout, std::cerr);
  if (gysin->parsed()) return novikov::cli::cmd_gysin(config, std::cout, std::cerr);
  if (counter->parsed()) return novikov::cli::cmd_counterexample(config, std::cout, std::cerr);
  return novikov::cli::cmd_sweep(config, std::cout, std::cerr);
}
