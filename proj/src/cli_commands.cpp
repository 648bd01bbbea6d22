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

#include "novikov/cli_commands.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>

#include "novikov/classical_gysin.hpp"
#include "novikov/cone_lemmas.hpp"
#include "novikov/errors.hpp"
#include "novikov/io.hpp"
#include "novikov/quantum_gysin.hpp"
#include "novikov/sweep.hpp"

namespace novikov::cli {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

const char* yes_no(bool b) { return b ? "true" : "false"; }

Json representatives_json(const HomologyResult& h) {
  Json reps = Json::array();
  for (const auto& rep : h.representatives) {
    Json terms = Json::array();
    for (const auto& [label, value] : rep) terms.push_back({{"label", label}, {"scalar", scalar_to_json(value)}});
    reps.push_back(terms);
  }
  return reps;
}

void representatives_text(std::ostream& out, const HomologyResult& h) {
  out << "representatives:\n";
  for (std::size_t i = 0; i < h.representatives.size(); ++i) {
    out << "  [" << i << "]";
    for (const auto& [label, value] : h.representatives[i]) out << " " << label << ": " << value.to_string() << ";";
    out << "\n";
  }
}

HomologyOptions homology_options(const RunConfig& config) {
  HomologyOptions o;
  o.tie_break_seed = config.tie_break_seed;
  return o;
}

Json hypotheses_json(const HypothesisReport& r) {
  Json out = Json::array();
  for (const auto& c : r.checks) {
    out.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}, {"boundary", c.boundary}});
  }
  return out;
}

void hypotheses_text(std::ostream& out, const HypothesisReport& r) {
  for (const auto& c : r.checks) {
    out << c.name << std::string(c.name.size() < 6 ? 6 - c.name.size() : 1, ' ') << (c.pass ? "pass" : "FAIL");
    if (!c.pass) out << "  " << c.witness;
    out << "\n";
    for (const auto& b : c.boundary) out << "      boundary: " << b << "\n";
  }
}

}  // namespace

Exponent parse_exponent(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw InvalidInput("not a rational number: " + text);
  }
}

Exponent resolve_cutoff(const RunConfig& config, const std::optional<Exponent>& file_default) {
  Exponent cutoff(kBuiltinCutoff);
  if (config.cutoff) {
    cutoff = *config.cutoff;
  } else if (file_default) {
    cutoff = *file_default;
  } else if (const char* env = std::getenv(kCutoffEnv); env != nullptr && *env != '\0') {
    cutoff = parse_exponent(env);
  }
  if (cutoff.sign() <= 0) throw InvalidInput("cutoff must be positive, got " + cutoff.to_string());
  return cutoff;
}

int cmd_homology(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.inputs.size() != 1) throw InvalidInput("homology takes exactly one complex file");
    const ComplexFile file = load_complex(config.inputs.front());
    const Exponent cutoff = resolve_cutoff(config, file.default_cutoff);
    const HomologyResult h = homology_rank(file.complex, cutoff, homology_options(config));
    if (config.format == OutputFormat::Json) {
      emit_json(out, {{"command", "homology"},
                      {"field", std::string(to_string(file.complex.field))},
                      {"generators", file.complex.size()},
                      {"cutoff", cutoff.to_string()},
                      {"rank", h.rank},
                      {"differential_rank", h.differential_rank},
                      {"exact", h.exact},
                      {"representatives", representatives_json(h)}});
    } else {
      out << "field: " << to_string(file.complex.field) << "\n"
          << "generators: " << file.complex.size() << "\n"
          << "cutoff: " << cutoff.to_string() << "\n"
          << "rank: " << h.rank << "\n"
          << "differential rank: " << h.differential_rank << "\n"
          << "exact: " << yes_no(h.exact) << "\n";
      representatives_text(out, h);
    }
    return kExitPass;
  });
}

int cmd_cone_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ConeData data;
    std::optional<Exponent> file_default;
    std::string source;
    if (!config.inputs.empty()) {
      if (config.inputs.size() != 1) throw InvalidInput("cone-check takes one cone data file");
      ConeFile file = load_cone_data(config.inputs.front());
      data = std::move(file.data);
      file_default = file.default_cutoff;
      if (config.epsilon) data.epsilon = *config.epsilon;
      source = config.inputs.front();
    } else if (config.seed) {
      const auto gen = morse::random_config(*config.seed, config.mutation, config.epsilon.value_or(Exponent(1)));
      data = morse::generate_cone_data(gen);
      source = "seed " + std::to_string(*config.seed);
    } else {
      throw InvalidInput("cone-check needs a file or --seed");
    }
    const Exponent cutoff = resolve_cutoff(config, file_default);
    const DoubleConeResult r = double_cone_check(data, cutoff, homology_options(config));
    if (config.format == OutputFormat::Json) {
      emit_json(out, {{"command", "cone-check"},
                      {"source", source},
                      {"epsilon", data.epsilon.to_string()},
                      {"cutoff", cutoff.to_string()},
                      {"hypotheses", hypotheses_json(r.report)},
                      {"cone_rank", r.cone_rank},
                      {"exact", r.exact},
                      {"conclusion", r.conclusion}});
    } else {
      out << "source: " << source << "\n"
          << "epsilon: " << data.epsilon.to_string() << "\n"
          << "cutoff: " << cutoff.to_string() << "\n";
      hypotheses_text(out, r.report);
      out << "cone rank: " << r.cone_rank << "\n"
          << "exact: " << yes_no(r.exact) << "\n"
          << "conclusion: " << (r.conclusion ? "pass" : "fail") << "\n";
    }
    return r.conclusion ? kExitPass : kExitHypothesisFailure;
  });
}

namespace {

int gysin_classical(const RunConfig& config, std::ostream& out) {
  using namespace classical;
  const SphereBundleModel m = build_model(config.model, config.field.value_or(BaseField::Integers));
  const CPsiResult cpsi = build_CPsi(m);
  const GysinReport g = gysin_exactness(m);
  const bool angular_ok = coboundary(m.total, m.angular) == pullback(m.rho_push, m.euler);
  const bool pass = angular_ok && cpsi.quasi_iso && g.exact;
  const std::size_t rows = std::max(g.base_homology.size(), g.total_homology.size());
  const auto group = [&](const std::vector<HomologyGroup>& hs, std::size_t d) {
    return d < hs.size() ? hs[d].to_string(m.ring) : std::string("0");
  };
  std::map<std::string, std::int64_t> euler;
  for (std::size_t i = 0; i < m.euler.values.size(); ++i) euler[m.base.cells(m.euler.dim)[i]] = m.euler.values[i];
  if (config.format == OutputFormat::Json) {
    Json table = Json::array();
    for (std::size_t d = 0; d < rows; ++d) {
      table.push_back({{"dim", d}, {"base", group(g.base_homology, d)}, {"total", group(g.total_homology, d)}});
    }
    Json nodes = Json::array();
    for (const auto& n : g.nodes) nodes.push_back({{"node", n.node}, {"dim", n.dim}, {"exact", n.exact}});
    emit_json(out, {{"command", "gysin"},
                    {"mode", "classical"},
                    {"model", m.name},
                    {"ring", std::string(to_string(m.ring))},
                    {"fiber_dim", m.fiber_dim},
                    {"euler", euler},
                    {"angular_identity", angular_ok},
                    {"cpsi_quasi_iso", cpsi.quasi_iso},
                    {"homology", table},
                    {"nodes", nodes},
                    {"exact", g.exact},
                    {"pass", pass}});
  } else {
    out << "model: " << m.name << "\nring: " << to_string(m.ring) << "\nfiber dim: " << m.fiber_dim << "\n";
    out << "euler cochain:";
    for (const auto& [cell, v] : euler) out << " " << cell << "=" << v;
    out << "\nd psi = rho^* e: " << yes_no(angular_ok) << "\nC-Psi quasi-isomorphism: " << yes_no(cpsi.quasi_iso)
        << "\n";
    out << "dim  H(N)  H(V)\n";
    for (std::size_t d = 0; d < rows; ++d) {
      out << d << "  " << group(g.base_homology, d) << "  " << group(g.total_homology, d) << "\n";
    }
    for (const auto& n : g.nodes) {
      if (!n.exact) out << "not exact at " << n.node << " dim " << n.dim << "\n";
    }
    out << "exact: " << yes_no(g.exact) << "\n";
  }
  return pass ? kExitPass : kExitHypothesisFailure;
}

int gysin_quantum(const RunConfig& config, std::ostream& out) {
  using namespace quantum;
  const Exponent cutoff = resolve_cutoff(config, std::nullopt);
  const QuantumModule q = cpn_cap(config.n);
  const EulerAction e = cap_action(q);
  const InvertibilityResult inv = invertibility_check(e, cutoff);
  const std::size_t cone_rank = gysin_cone_prediction(e, cutoff, homology_options(config));
  bool inverse_matches = false;
  std::vector<std::tuple<std::string, std::string, NovikovScalar>> entries;
  if (inv.inverse) {
    const NovikovMatrix expected =
        matrix_power(q.H, q.n - 1).scaled(NovikovScalar::monomial(BaseField::GF2, Exponent(-1)));
    inverse_matches = true;
    for (std::size_t i = 0; i < q.basis.size(); ++i) {
      for (std::size_t j = 0; j < q.basis.size(); ++j) {
        const NovikovScalar v = inv.inverse->at(i, j);
        if (!v.congruent(expected.at(i, j))) inverse_matches = false;
        if (!v.is_zero()) entries.emplace_back(q.basis[i].label, q.basis[j].label, v);
      }
    }
  }
  const bool consistent = inv.invertible == (cone_rank == 0);
  if (config.format == OutputFormat::Json) {
    Json inverse = Json::array();
    for (const auto& [t, s, v] : entries) inverse.push_back({{"to", t}, {"from", s}, {"scalar", scalar_to_json(v)}});
    emit_json(out, {{"command", "gysin"},
                    {"mode", "quantum"},
                    {"n", q.n},
                    {"cutoff", cutoff.to_string()},
                    {"invertible", inv.invertible},
                    {"inverse", inverse},
                    {"inverse_is_t_inv_H_pow", inverse_matches},
                    {"cone_rank", cone_rank}});
  } else {
    out << "n: " << q.n << "\ncutoff: " << cutoff.to_string() << "\nH^n = t id: true\n"
        << "invertible: " << yes_no(inv.invertible) << "\n";
    for (const auto& [t, s, v] : entries) out << "  inverse " << t << " <- " << s << ": " << v.to_string() << "\n";
    out << "inverse = t^-1 H^(n-1): " << yes_no(inverse_matches) << "\n"
        << "cone rank: " << cone_rank << "\n";
  }
  return consistent ? kExitPass : kExitHypothesisFailure;
}

int gysin_morse(const RunConfig& config, std::ostream& out) {
  using namespace morse;
  GeneratorConfig gen;
  gen.fix_count = config.fix_count;
  gen.fiber_dim = config.fiber_dim;
  gen.epsilon = config.epsilon.value_or(Exponent(1));
  gen.richness = config.richness;
  gen.seed = config.seed.value_or(0);
  gen.mutation = config.mutation;
  gen.action_grades = config.action_grades || config.mutation == Mutation::Pos;
  if (gen.fix_count < 1 || gen.fiber_dim < 1) throw InvalidInput("--fix-count and --fiber-dim must be positive");
  if (gen.richness < 0 || gen.richness > 3) throw InvalidInput("--richness must be in 0..3");
  const Exponent cutoff = resolve_cutoff(config, std::nullopt);
  const MorseFloerInstance instance = build_intersection(make_fixed_points(gen), MorseFiber{gen.fiber_dim});
  const PipelineReport r =
      run_theorem_pipeline(instance, gen.epsilon, cutoff, gen.seed, SynthesisParams{gen.richness, gen.mutation},
                           homology_options(config));
  if (config.format == OutputFormat::Json) {
    emit_json(out, {{"command", "gysin"},
                    {"mode", "morse"},
                    {"fix_count", gen.fix_count},
                    {"fiber_dim", gen.fiber_dim},
                    {"epsilon", gen.epsilon.to_string()},
                    {"richness", gen.richness},
                    {"seed", gen.seed},
                    {"mutation", to_string(gen.mutation)},
                    {"cutoff", cutoff.to_string()},
                    {"hypotheses", hypotheses_json(r.check.report)},
                    {"cone_rank", r.check.cone_rank},
                    {"rank_C_prime", r.rank_C_prime},
                    {"rank_C", r.rank_C},
                    {"rank_cone_b", r.rank_cone_b},
                    {"rank_C_dprime", r.rank_C_dprime},
                    {"ranks_agree", r.ranks_agree},
                    {"pass", r.pass}});
  } else {
    out << "fix count: " << gen.fix_count << "\nfiber dim: " << gen.fiber_dim
        << "\nepsilon: " << gen.epsilon.to_string() << "\nrichness: " << gen.richness << "\nseed: " << gen.seed
        << "\nmutation: " << to_string(gen.mutation) << "\ncutoff: " << cutoff.to_string() << "\n";
    hypotheses_text(out, r.check.report);
    out << "double cone rank: " << r.check.cone_rank << "\n"
        << "rank H(C'): " << r.rank_C_prime << "\nrank H(C): " << r.rank_C << "\nrank H(cone b): " << r.rank_cone_b
        << "\nrank H(C''): " << r.rank_C_dprime << "\nranks agree: " << yes_no(r.ranks_agree)
        << "\npass: " << yes_no(r.pass) << "\n";
  }
  return r.pass ? kExitPass : kExitHypothesisFailure;
}

}  // namespace

int cmd_gysin(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    switch (config.mode) {
      case GysinMode::Classical:
        return gysin_classical(config, out);
      case GysinMode::Quantum:
        return gysin_quantum(config, out);
      case GysinMode::Morse:
        return gysin_morse(config, out);
    }
    return kExitInputError;
  });
}

int cmd_counterexample(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (config.max_degree < 1) throw InvalidInput("--max-degree must be positive");
    const Counterexample ce = build_counterexample(config.max_degree);
    const Exponent cutoff = resolve_cutoff(config, std::nullopt);
    if (config.write_path) {
      std::ofstream file(*config.write_path);
      if (!file) throw InvalidInput("cannot write " + *config.write_path);
      write_complex(file, ce.finite, cutoff);
    }
    const HomologyResult h = homology_rank(ce.finite, cutoff, homology_options(config));
    const WitnessCheck w = check_completion_witness(ce);
    std::vector<std::size_t> quotient_ranks;
    bool quotients_acyclic = true;
    for (int q = 1; q <= config.max_degree; ++q) {
      quotient_ranks.push_back(homology_rank(counterexample_quotient(q), cutoff).rank);
      quotients_acyclic = quotients_acyclic && quotient_ranks.back() == 0;
    }
    const bool pass = h.rank == 1 && w.ok && quotients_acyclic;
    if (config.format == OutputFormat::Json) {
      emit_json(out, {{"command", "counterexample"},
                      {"max_degree", config.max_degree},
                      {"cutoff", cutoff.to_string()},
                      {"rank", h.rank},
                      {"representatives", representatives_json(h)},
                      {"witness_ok", w.ok},
                      {"witness_detail", w.detail},
                      {"quotient_ranks", quotient_ranks},
                      {"pass", pass}});
    } else {
      out << "max degree: " << config.max_degree << "\ncutoff: " << cutoff.to_string() << "\nrank: " << h.rank
          << "\n";
      representatives_text(out, h);
      out << "completion witness: " << (w.ok ? "ok" : "FAIL") << "  " << w.detail << "\nquotient ranks:";
      for (const auto r : quotient_ranks) out << " " << r;
      out << "\npass: " << yes_no(pass) << "\n";
    }
    return pass ? kExitPass : kExitHypothesisFailure;
  });
}

int cmd_sweep(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Exponent eps = config.epsilon.value_or(Exponent(1));
    const Exponent cutoff = resolve_cutoff(config, std::nullopt);
    const std::uint64_t first = config.seed.value_or(0);
    Json report{{"command", "sweep"}, {"count", config.count}, {"first_seed", first}, {"cutoff", cutoff.to_string()},
                {"epsilon", eps.to_string()}};
    std::vector<std::string> errors;
    bool pass = true;
    if (config.sweep_kind == SweepKind::DoubleCone) {
      SweepOptions opt;
      opt.mutation = config.mutation;
      opt.epsilon = eps;
      opt.cutoff = cutoff;
      opt.first_seed = first;
      opt.count = config.count;
      opt.jobs = config.jobs;
      opt.compute_e1 = config.mutation == morse::Mutation::None;
      opt.homology = homology_options(config);
      const auto results = double_cone_sweep(opt);
      std::map<std::string, std::size_t> failure_counts;
      std::size_t all_pass = 0;
      std::size_t targeted = 0;
      std::size_t nonzero_cone = 0;
      std::size_t e1_zero = 0;
      const std::map<morse::Mutation, std::string> target{
          {morse::Mutation::Low2, "LOW2"}, {morse::Mutation::Gap, "GAP"}, {morse::Mutation::Pos, "POS"}};
      for (const auto& r : results) {
        if (!r.error.empty()) {
          errors.push_back("seed " + std::to_string(r.seed) + ": " + r.error);
          continue;
        }
        for (const auto& f : r.failures) ++failure_counts[f];
        if (r.failures.empty() && r.cone_rank == 0) ++all_pass;
        if (r.cone_rank != 0) ++nonzero_cone;
        if (r.e1_zero) ++e1_zero;
        const auto it = target.find(config.mutation);
        if (it != target.end() && r.failures == std::vector<std::string>{it->second}) ++targeted;
      }
      pass = config.mutation == morse::Mutation::None ? all_pass == results.size() : targeted == results.size();
      report["kind"] = "double-cone";
      report["mutation"] = morse::to_string(config.mutation);
      report["all_pass"] = all_pass;
      report["targeted"] = targeted;
      report["failure_counts"] = failure_counts;
      report["nonzero_cone_rank"] = nonzero_cone;
      if (opt.compute_e1) report["e1_zero"] = e1_zero;
    } else {
      const std::vector<Exponent> cutoffs{cutoff, cutoff * Exponent(2)};
      const auto results = seidel_sweep(first, config.count, eps, cutoffs, config.jobs);
      std::size_t hypotheses = 0;
      std::size_t acyclic = 0;
      for (const auto& r : results) {
        if (!r.error.empty()) {
          errors.push_back("seed " + std::to_string(r.seed) + ": " + r.error);
          continue;
        }
        if (r.hypotheses) ++hypotheses;
        if (std::all_of(r.total_ranks.begin(), r.total_ranks.end(), [](std::size_t x) { return x == 0; })) ++acyclic;
      }
      pass = hypotheses == results.size() && acyclic == results.size();
      report["kind"] = "seidel";
      report["hypotheses"] = hypotheses;
      report["acyclic"] = acyclic;
    }
    report["errors"] = errors;
    report["pass"] = pass && errors.empty();
    if (config.format == OutputFormat::Json) {
      emit_json(out, report);
    } else {
      for (const auto& [key, value] : report.items()) {
        if (key == "command" || key == "errors") continue;
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
      }
      for (const auto& e : errors) out << "error: " << e << "\n";
    }
    if (!errors.empty()) return kExitInputError;
    return pass ? kExitPass : kExitHypothesisFailure;
  });
}

}  // namespace novikov::cli
