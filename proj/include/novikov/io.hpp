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

// Line-oriented JSON file formats for complexes and cone data.
//
// Complex file, one JSON object per line:
//   {"kind":"header","field":"GF2","default_cutoff":"12/1","finite_support":true}
//   {"kind":"generator","label":"x","grade":"0/1","hdeg":1}
//   {"kind":"entry","from":"x","to":"y","scalar":{"terms":[[1,1,1]],"cutoff":null}}
// Scalar terms are [exponent numerator, exponent denominator, coefficient];
// the coefficient is an integer or a "p/q" string.
//
// Cone data file: a header with "epsilon", then sections opened by
//   {"kind":"complex","name":"C_prime"}   (also "C", "C_dprime")
//   {"kind":"map","name":"b"}             (also "c", "h")
// each followed by generator or entry lines.

#ifndef NOVIKOV_IO_HPP
#define NOVIKOV_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "novikov/cone_lemmas.hpp"
#include "novikov/graded_complex.hpp"
#include <json.hpp>

namespace novikov {

using Json = nlohmann::json;

[[nodiscard]] Json scalar_to_json(const NovikovScalar& s);
[[nodiscard]] NovikovScalar scalar_from_json(const Json& j, BaseField field);

struct ComplexFile {
  GradedComplex complex;
  std::optional<Exponent> default_cutoff;
};

void write_complex(std::ostream& os, const GradedComplex& c, const std::optional<Exponent>& default_cutoff = {});
[[nodiscard]] ComplexFile read_complex(std::istream& is);
[[nodiscard]] ComplexFile load_complex(const std::string& path);

struct ConeFile {
  ConeData data;
  std::optional<Exponent> default_cutoff;
};

void write_cone_data(std::ostream& os, const ConeData& d, const std::optional<Exponent>& default_cutoff = {});
[[nodiscard]] ConeFile read_cone_data(std::istream& is);
[[nodiscard]] ConeFile load_cone_data(const std::string& path);

/// One line of compact JSON with sorted keys, newline-terminated.
[[nodiscard]] std::string dump_line(const Json& j);

}  // namespace novikov

#endif  // NOVIKOV_IO_HPP
