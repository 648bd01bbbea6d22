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

#include "novikov/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "novikov/errors.hpp"

namespace novikov {

namespace {

Json coeff_to_json(const Rational& c) {
  if (c.is_integer()) return c.num();
  return c.to_string();
}

Rational coeff_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  throw InvalidInput("coefficient must be an integer or a \"p/q\" string");
}

Exponent exponent_from_json(const Json& j, const char* what) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw InvalidInput(std::string(what) + " must be a \"p/q\" string");
}

Json generator_line(const Generator& g) {
  Json j = {{"kind", "generator"}, {"label", g.label}, {"grade", g.grade.to_string()}};
  if (g.hdeg) j["hdeg"] = *g.hdeg;
  return j;
}

Json entry_line(const std::string& from, const std::string& to, const NovikovScalar& s) {
  return {{"kind", "entry"}, {"from", from}, {"to", to}, {"scalar", scalar_to_json(s)}};
}

void write_entries(std::ostream& os, const NovikovMatrix& m) {
  for (const auto& [key, value] : m.entries()) {
    os << dump_line(entry_line(m.source()[key.second].label, m.target()[key.first].label, value));
  }
}

Generator parse_generator(const Json& j) {
  Generator g{j.at("label").get<std::string>(), exponent_from_json(j.at("grade"), "grade"), std::nullopt};
  if (j.contains("hdeg") && !j.at("hdeg").is_null()) g.hdeg = j.at("hdeg").get<int>();
  return g;
}

struct PendingEntry {
  std::size_t line;
  std::string from;
  std::string to;
  Json scalar;
};

void apply_entries(NovikovMatrix& m, const std::vector<PendingEntry>& entries) {
  for (const auto& e : entries) {
    try {
      const auto src = m.source().find(e.from);
      const auto tgt = m.target().find(e.to);
      if (!src) throw InvalidInput("unknown source label '" + e.from + "'");
      if (!tgt) throw InvalidInput("unknown target label '" + e.to + "'");
      m.add(*tgt, *src, scalar_from_json(e.scalar, m.field()));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(e.line, ex.what());
    }
  }
}

// Reads nonblank lines as JSON objects, tagging each with its line number.
std::vector<std::pair<std::size_t, Json>> read_lines(std::istream& is) {
  std::vector<std::pair<std::size_t, Json>> out;
  std::string text;
  std::size_t n = 0;
  while (std::getline(is, text)) {
    ++n;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json j = Json::parse(text);
      if (!j.is_object() || !j.contains("kind")) throw ParseError(n, "expected an object with a \"kind\" field");
      out.emplace_back(n, std::move(j));
    } catch (const Json::exception& ex) {
      throw ParseError(n, ex.what());
    }
  }
  return out;
}

struct Header {
  BaseField field = BaseField::GF2;
  std::optional<Exponent> default_cutoff;
  std::optional<Exponent> epsilon;
  bool finite_support = true;
};

Header parse_header(const std::vector<std::pair<std::size_t, Json>>& lines) {
  if (lines.empty() || lines.front().second.at("kind") != "header") {
    throw ParseError(lines.empty() ? 1 : lines.front().first, "file must start with a header line");
  }
  const auto& [n, j] = lines.front();
  Header h;
  try {
    if (j.contains("field")) h.field = parse_base_field(j.at("field").get<std::string>());
    if (j.contains("default_cutoff") && !j.at("default_cutoff").is_null()) {
      h.default_cutoff = exponent_from_json(j.at("default_cutoff"), "default_cutoff");
    }
    if (j.contains("epsilon") && !j.at("epsilon").is_null()) h.epsilon = exponent_from_json(j.at("epsilon"), "epsilon");
    if (j.contains("finite_support")) h.finite_support = j.at("finite_support").get<bool>();
  } catch (const std::exception& ex) {
    throw ParseError(n, ex.what());
  }
  return h;
}

}  // namespace

std::string dump_line(const Json& j) { return j.dump() + "\n"; }

Json scalar_to_json(const NovikovScalar& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) terms.push_back({t.exponent.num(), t.exponent.den(), coeff_to_json(t.coeff)});
  Json cutoff = s.is_exact() ? Json(nullptr) : Json(s.cutoff().value().to_string());
  return {{"terms", terms}, {"cutoff", cutoff}};
}

NovikovScalar scalar_from_json(const Json& j, BaseField field) {
  if (!j.is_object() || !j.contains("terms")) throw InvalidInput("scalar must be an object with \"terms\"");
  std::vector<Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 3) throw InvalidInput("scalar term must be [num, den, coeff]");
    const auto den = t[1].get<std::int64_t>();
    if (den == 0) throw InvalidInput("zero exponent denominator");
    terms.push_back({Exponent(t[0].get<std::int64_t>(), den), coeff_from_json(t[2])});
  }
  Extended cutoff = Extended::pos_inf();
  if (j.contains("cutoff") && !j.at("cutoff").is_null()) cutoff = Extended(exponent_from_json(j.at("cutoff"), "cutoff"));
  return NovikovScalar(field, std::move(terms), cutoff);
}

void write_complex(std::ostream& os, const GradedComplex& c, const std::optional<Exponent>& default_cutoff) {
  Json header = {{"kind", "header"}, {"field", std::string(to_string(c.field))}, {"finite_support", c.finite_support}};
  header["default_cutoff"] = default_cutoff ? Json(default_cutoff->to_string()) : Json(nullptr);
  os << dump_line(header);
  for (const auto& g : c.basis.elements()) os << dump_line(generator_line(g));
  write_entries(os, c.differential);
}

ComplexFile read_complex(std::istream& is) {
  const auto lines = read_lines(is);
  const Header h = parse_header(lines);
  GradedBasis basis;
  std::vector<PendingEntry> entries;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [n, j] = lines[i];
    try {
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "generator") {
        basis.push_back(parse_generator(j));
      } else if (kind == "entry") {
        entries.push_back({n, j.at("from").get<std::string>(), j.at("to").get<std::string>(), j.at("scalar")});
      } else {
        throw InvalidInput("unexpected line kind '" + kind + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(n, ex.what());
    }
  }
  ComplexFile out;
  out.complex = GradedComplex(basis, h.field);
  out.complex.finite_support = h.finite_support;
  apply_entries(out.complex.differential, entries);
  out.default_cutoff = h.default_cutoff;
  return out;
}

ComplexFile load_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_complex(in);
}

void write_cone_data(std::ostream& os, const ConeData& d, const std::optional<Exponent>& default_cutoff) {
  Json header = {{"kind", "header"}, {"field", std::string(to_string(d.C.field))}, {"epsilon", d.epsilon.to_string()}};
  header["default_cutoff"] = default_cutoff ? Json(default_cutoff->to_string()) : Json(nullptr);
  os << dump_line(header);
  const std::pair<const char*, const GradedComplex*> complexes[] = {
      {"C_prime", &d.C_prime}, {"C", &d.C}, {"C_dprime", &d.C_dprime}};
  for (const auto& [name, c] : complexes) {
    os << dump_line({{"kind", "complex"}, {"name", name}});
    for (const auto& g : c->basis.elements()) os << dump_line(generator_line(g));
    write_entries(os, c->differential);
  }
  const std::pair<const char*, const NovikovMatrix*> maps[] = {{"b", &d.b}, {"c", &d.c}, {"h", &d.h}};
  for (const auto& [name, m] : maps) {
    os << dump_line({{"kind", "map"}, {"name", name}});
    write_entries(os, *m);
  }
}

ConeFile read_cone_data(std::istream& is) {
  const auto lines = read_lines(is);
  const Header h = parse_header(lines);
  if (!h.epsilon) throw ParseError(lines.front().first, "cone data header needs \"epsilon\"");
  std::map<std::string, GradedBasis> bases;
  std::map<std::string, std::vector<PendingEntry>> entries;
  std::string section;
  bool section_is_map = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [n, j] = lines[i];
    try {
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "complex" || kind == "map") {
        section = j.at("name").get<std::string>();
        section_is_map = kind == "map";
        static const std::set<std::string> complexes = {"C_prime", "C", "C_dprime"};
        static const std::set<std::string> maps = {"b", "c", "h"};
        if ((section_is_map ? maps : complexes).count(section) == 0) {
          throw InvalidInput("unknown " + kind + " section '" + section + "'");
        }
        if (bases.count(section) != 0 || entries.count(section) != 0) {
          throw InvalidInput("duplicate section '" + section + "'");
        }
        entries[section];
        if (!section_is_map) bases[section];
      } else if (section.empty()) {
        throw InvalidInput("line outside any section");
      } else if (kind == "generator") {
        if (section_is_map) throw InvalidInput("generator line inside a map section");
        bases[section].push_back(parse_generator(j));
      } else if (kind == "entry") {
        entries[section].push_back(
            {n, j.at("from").get<std::string>(), j.at("to").get<std::string>(), j.at("scalar")});
      } else {
        throw InvalidInput("unexpected line kind '" + kind + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& ex) {
      throw ParseError(n, ex.what());
    }
  }
  auto complex = [&](const std::string& name) {
    GradedComplex c(bases[name], h.field);
    apply_entries(c.differential, entries[name]);
    return c;
  };
  ConeFile out;
  out.data.C_prime = complex("C_prime");
  out.data.C = complex("C");
  out.data.C_dprime = complex("C_dprime");
  out.data.b = NovikovMatrix(out.data.C_prime.basis, out.data.C.basis, h.field);
  out.data.c = NovikovMatrix(out.data.C.basis, out.data.C_dprime.basis, h.field);
  out.data.h = NovikovMatrix(out.data.C_prime.basis, out.data.C_dprime.basis, h.field);
  apply_entries(out.data.b, entries["b"]);
  apply_entries(out.data.c, entries["c"]);
  apply_entries(out.data.h, entries["h"]);
  out.data.epsilon = *h.epsilon;
  out.default_cutoff = h.default_cutoff;
  return out;
}

ConeFile load_cone_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_cone_data(in);
}

}  // namespace novikov
