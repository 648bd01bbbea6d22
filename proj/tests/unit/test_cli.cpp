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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "novikov/cli_commands.hpp"
#include "novikov/io.hpp"

namespace novikov::cli {
namespace {

std::string data(const std::string& name) { return std::string(NOVIKOV_DATA_DIR) + "/" + name; }

struct CmdRun {
  int code = 0;
  std::string out;
  std::string err;
};

template <typename F>
CmdRun run(F cmd, const RunConfig& config) {
  std::ostringstream out;
  std::ostringstream err;
  CmdRun r;
  r.code = cmd(config, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

RunConfig json_config(std::vector<std::string> inputs = {}) {
  RunConfig c;
  c.inputs = std::move(inputs);
  c.format = OutputFormat::Json;
  return c;
}

TEST(CliHomology, ShippedFiles) {
  const CmdRun ce = run(cmd_homology, json_config({data("counterexample_8.jsonl")}));
  ASSERT_EQ(ce.code, kExitPass) << ce.err;
  const Json j = Json::parse(ce.out);
  EXPECT_EQ(j["rank"], 1);
  ASSERT_EQ(j["representatives"].size(), 1U);
  ASSERT_EQ(j["representatives"][0].size(), 1U);
  EXPECT_EQ(j["representatives"][0][0]["label"], "y^0");
  // The representative scalar round-trips through the file format.
  const NovikovScalar s = scalar_from_json(j["representatives"][0][0]["scalar"], BaseField::GF2);
  EXPECT_TRUE(s.congruent(NovikovScalar::one(BaseField::GF2)));

  EXPECT_EQ(Json::parse(run(cmd_homology, json_config({data("empty.jsonl")})).out)["rank"], 0);
  EXPECT_EQ(Json::parse(run(cmd_homology, json_config({data("t_iso.jsonl")})).out)["rank"], 0);
}

TEST(CliHomology, ParseErrorsCarryLineNumbers) {
  const std::string path = ::testing::TempDir() + "bad_complex.jsonl";
  {
    std::ofstream f(path);
    f << R"({"kind":"header","field":"GF2"})" << "\n"
      << R"({"kind":"generator","label":"x","grade":"0/1"})" << "\n"
      << "{not json\n";
  }
  const CmdRun r = run(cmd_homology, json_config({path}));
  EXPECT_EQ(r.code, kExitInputError);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_EQ(run(cmd_homology, json_config({"/no/such/file"})).code, kExitInputError);
}

TEST(CliHomology, CutoffResolution) {
  RunConfig c;
  EXPECT_EQ(resolve_cutoff(c, Exponent(5)), Exponent(5));
  ::setenv(kCutoffEnv, "7/2", 1);
  EXPECT_EQ(resolve_cutoff(c, std::nullopt), Exponent(7, 2));
  EXPECT_EQ(resolve_cutoff(c, Exponent(5)), Exponent(5));
  c.cutoff = Exponent(3);
  EXPECT_EQ(resolve_cutoff(c, Exponent(5)), Exponent(3));
  ::unsetenv(kCutoffEnv);
  c.cutoff.reset();
  EXPECT_EQ(resolve_cutoff(c, std::nullopt), Exponent(kBuiltinCutoff));
  c.cutoff = Exponent(0);
  EXPECT_THROW((void)resolve_cutoff(c, std::nullopt), InvalidInput);
  c.inputs = {data("t_iso.jsonl")};
  EXPECT_EQ(run(cmd_homology, c).code, kExitInputError);
}

TEST(CliConeCheck, ShippedAndGenerated) {
  EXPECT_EQ(run(cmd_cone_check, json_config({data("cone_trivial.jsonl")})).code, kExitPass);
  EXPECT_EQ(run(cmd_cone_check, json_config({data("cone_generated.jsonl")})).code, kExitPass);

  const CmdRun low2 = run(cmd_cone_check, json_config({data("cone_low2.jsonl")}));
  EXPECT_EQ(low2.code, kExitHypothesisFailure);
  const Json j = Json::parse(low2.out);
  for (const auto& h : j["hypotheses"]) {
    EXPECT_EQ(h["pass"], h["name"] != "LOW2");
    if (h["name"] == "LOW2") {
      EXPECT_FALSE(h["witness"].get<std::string>().empty());
    }
  }

  RunConfig seeded = json_config();
  seeded.seed = 17;
  EXPECT_EQ(run(cmd_cone_check, seeded).code, kExitPass);
  seeded.mutation = morse::Mutation::Gap;
  EXPECT_EQ(run(cmd_cone_check, seeded).code, kExitHypothesisFailure);
  EXPECT_EQ(run(cmd_cone_check, json_config()).code, kExitInputError);
}

TEST(CliGysin, ThreeModes) {
  RunConfig c = json_config();
  c.model = "hopf_s1";
  const CmdRun classical = run(cmd_gysin, c);
  ASSERT_EQ(classical.code, kExitPass) << classical.err;
  const Json j = Json::parse(classical.out);
  std::vector<std::string> total;
  for (const auto& row : j["homology"]) total.push_back(row["total"]);
  EXPECT_EQ(total, (std::vector<std::string>{"Z", "0", "0", "Z"}));
  EXPECT_TRUE(j["exact"].get<bool>());

  c.model = "custom:" + data("bundle_unit_tangent_s2.jsonl");
  const Json custom = Json::parse(run(cmd_gysin, c).out);
  EXPECT_EQ(custom["homology"][1]["total"], "Z/2");

  c.mode = GysinMode::Quantum;
  c.n = 4;
  const Json q = Json::parse(run(cmd_gysin, c).out);
  EXPECT_EQ(q["cone_rank"], 0);
  EXPECT_TRUE(q["inverse_is_t_inv_H_pow"].get<bool>());

  c.mode = GysinMode::Morse;
  c.fix_count = 2;
  c.fiber_dim = 1;
  EXPECT_EQ(run(cmd_gysin, c).code, kExitPass);
  c.mutation = morse::Mutation::Low2;
  EXPECT_EQ(run(cmd_gysin, c).code, kExitHypothesisFailure);

  c.mode = GysinMode::Classical;
  c.model = "nonsense";
  EXPECT_EQ(run(cmd_gysin, c).code, kExitInputError);
}

TEST(CliCounterexample, WritesTheShippedFile) {
  RunConfig c;
  c.max_degree = 8;
  c.write_path = ::testing::TempDir() + "ce8.jsonl";
  const CmdRun r = run(cmd_counterexample, c);
  EXPECT_EQ(r.code, kExitPass) << r.err;
  std::ifstream written(*c.write_path);
  std::ifstream shipped(data("counterexample_8.jsonl"));
  const std::string a((std::istreambuf_iterator<char>(written)), std::istreambuf_iterator<char>());
  const std::string b((std::istreambuf_iterator<char>(shipped)), std::istreambuf_iterator<char>());
  EXPECT_EQ(a, b);
}

TEST(CliSweep, SummaryAndDeterminism) {
  RunConfig c = json_config();
  c.count = 8;
  c.jobs = 2;
  const CmdRun first = run(cmd_sweep, c);
  EXPECT_EQ(first.code, kExitPass) << first.out;
  EXPECT_EQ(first.out, run(cmd_sweep, c).out);
  c.mutation = morse::Mutation::Low2;
  const Json j = Json::parse(run(cmd_sweep, c).out);
  EXPECT_EQ(j["targeted"], 8);
  c.sweep_kind = SweepKind::Seidel;
  EXPECT_EQ(run(cmd_sweep, c).code, kExitPass);
}

TEST(CliOutput, ByteIdenticalAcrossRuns) {
  RunConfig c;
  c.inputs = {data("cone_generated.jsonl")};
  EXPECT_EQ(run(cmd_cone_check, c).out, run(cmd_cone_check, c).out);
  c.format = OutputFormat::Json;
  EXPECT_EQ(run(cmd_cone_check, c).out, run(cmd_cone_check, c).out);
  RunConfig g;
  g.mode = GysinMode::Morse;
  g.seed = 5;
  g.richness = 3;
  EXPECT_EQ(run(cmd_gysin, g).out, run(cmd_gysin, g).out);
}

}  // namespace
}  // namespace novikov::cli
