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

// Regenerates the example inputs under data/.

#include <fstream>
#include <iostream>
#include <string>

#include "novikov/classical_gysin.hpp"
#include "novikov/cone_lemmas.hpp"
#include "novikov/io.hpp"
#include "novikov/morse_floer_model.hpp"

namespace {

std::ofstream open(const std::string& dir, const std::string& name) {
  std::ofstream out(dir + "/" + name);
  if (!out) throw std::runtime_error("cannot write " + dir + "/" + name);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace novikov;
  const std::string dir = argc > 1 ? argv[1] : "data";

  {
    auto out = open(dir, "counterexample_8.jsonl");
    write_complex(out, build_counterexample(8).finite, Exponent(12));
  }
  {
    auto out = open(dir, "empty.jsonl");
    write_complex(out, GradedComplex(GradedBasis{}, BaseField::GF2));
  }
  {
    GradedBasis b;
    b.push_back({"x", Exponent(0), 1});
    b.push_back({"y", Exponent(1), 0});
    GradedComplex c(b, BaseField::GF2);
    c.differential.set("y", "x", NovikovScalar::monomial(BaseField::GF2, Exponent(1)));
    auto out = open(dir, "t_iso.jsonl");
    write_complex(out, c, Exponent(12));
  }
  {
    morse::GeneratorConfig g;
    g.fix_count = 1;
    g.fiber_dim = 1;
    g.richness = 0;
    auto out = open(dir, "cone_trivial.jsonl");
    write_cone_data(out, morse::generate_cone_data(g), Exponent(12));
  }
  {
    morse::GeneratorConfig g;
    g.fix_count = 2;
    g.fiber_dim = 1;
    g.richness = 0;
    g.mutation = morse::Mutation::Low2;
    auto out = open(dir, "cone_low2.jsonl");
    write_cone_data(out, morse::generate_cone_data(g), Exponent(12));
  }
  {
    morse::GeneratorConfig g;
    g.fix_count = 3;
    g.fiber_dim = 2;
    g.richness = 2;
    g.seed = 11;
    auto out = open(dir, "cone_generated.jsonl");
    write_cone_data(out, morse::generate_cone_data(g), Exponent(12));
  }
  {
    auto out = open(dir, "bundle_unit_tangent_s2.jsonl");
    classical::write_bundle_model(out, classical::unit_tangent_s2(BaseField::Integers));
  }
  std::cout << "wrote data files to " << dir << "\n";
  return 0;
}
