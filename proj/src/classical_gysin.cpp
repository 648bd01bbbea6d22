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

#include "novikov/classical_gysin.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "novikov/errors.hpp"
#include "novikov/io.hpp"

namespace novikov::classical {

namespace {

const std::vector<std::string> kNoCells;

std::string top_label(const std::string& cell, int k) { return cell + "|" + std::to_string(k); }

}  // namespace

// ---------------------------------------------------------------- complexes

CWComplex::CWComplex(BaseField ring, const std::vector<Cell>& cells) : ring_(ring) {
  (void)normalize_entry(ring, 0);
  int top = -1;
  for (const auto& c : cells) {
    if (c.dim < 0) throw InvalidInput("cell " + c.label + " has negative dimension");
    top = std::max(top, c.dim);
  }
  cells_.resize(static_cast<std::size_t>(top + 1));
  for (const auto& c : cells) {
    auto& bucket = cells_[static_cast<std::size_t>(c.dim)];
    if (!index_.emplace(c.label, std::make_pair(c.dim, bucket.size())).second) {
      throw InvalidInput("duplicate cell label " + c.label);
    }
    bucket.push_back(c.label);
  }
  for (int d = 0; d <= top; ++d) boundary_.emplace_back(count(d - 1), count(d), ring);
}

std::size_t CWComplex::count(int dim) const {
  if (dim < 0 || dim > top_dim()) return 0;
  return cells_[static_cast<std::size_t>(dim)].size();
}

const std::vector<std::string>& CWComplex::cells(int dim) const {
  if (dim < 0 || dim > top_dim()) return kNoCells;
  return cells_[static_cast<std::size_t>(dim)];
}

std::size_t CWComplex::total_cells() const { return index_.size(); }

std::pair<int, std::size_t> CWComplex::locate(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw InvalidInput("unknown cell " + label);
  return it->second;
}

IntMatrix CWComplex::boundary(int dim) const {
  if (dim < 0 || dim > top_dim()) return IntMatrix(count(dim - 1), count(dim), ring_);
  return boundary_[static_cast<std::size_t>(dim)];
}

void CWComplex::add_boundary(const std::string& source, const std::string& target, std::int64_t coef) {
  const auto [sd, si] = locate(source);
  const auto [td, ti] = locate(target);
  if (td != sd - 1) throw InvalidInput("boundary " + source + " -> " + target + " does not lower dimension by one");
  boundary_[static_cast<std::size_t>(sd)].add(ti, si, coef);
}

void CWComplex::validate() const {
  for (int d = 2; d <= top_dim(); ++d) {
    if (!(boundary(d - 1) * boundary(d)).is_zero()) {
      throw NotADifferential("dd != 0 on dimension " + std::to_string(d) + " cells");
    }
  }
}

// ---------------------------------------------------------------- maps

GradedMap::GradedMap(CWComplex source, CWComplex target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
  if (source_.ring() != target_.ring()) throw FieldMismatch("graded map between complexes over different rings");
  for (int d = 0; d <= source_.top_dim(); ++d) {
    blocks_.emplace_back(target_.count(d + degree_), source_.count(d), source_.ring());
  }
}

IntMatrix GradedMap::block(int dim) const {
  if (dim < 0 || dim > source_.top_dim()) {
    return IntMatrix(target_.count(dim + degree_), source_.count(dim), source_.ring());
  }
  return blocks_[static_cast<std::size_t>(dim)];
}

void GradedMap::add(const std::string& source, const std::string& target, std::int64_t coef) {
  const auto [sd, si] = source_.locate(source);
  const auto [td, ti] = target_.locate(target);
  if (td != sd + degree_) throw InvalidInput("map entry " + source + " -> " + target + " has the wrong degree");
  blocks_[static_cast<std::size_t>(sd)].add(ti, si, coef);
}

void GradedMap::set_block(int dim, IntMatrix block) {
  if (dim < 0 || dim > source_.top_dim()) {
    if (!block.is_zero()) throw InvalidInput("nonzero block outside the source dimensions");
    return;
  }
  auto& slot = blocks_[static_cast<std::size_t>(dim)];
  if (block.rows() != slot.rows() || block.cols() != slot.cols()) throw InvalidInput("block shape mismatch");
  slot = std::move(block);
}

std::int64_t GradedMap::at(const std::string& source, const std::string& target) const {
  const auto [sd, si] = source_.locate(source);
  const auto [td, ti] = target_.locate(target);
  if (td != sd + degree_) return 0;
  return blocks_[static_cast<std::size_t>(sd)](ti, si);
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (f.target().total_cells() != g.source().total_cells()) throw InvalidInput("composition shape mismatch");
  GradedMap out(f.source(), g.target(), f.degree() + g.degree());
  for (int d = 0; d <= f.source().top_dim(); ++d) out.set_block(d, g.block(d + f.degree()) * f.block(d));
  return out;
}

void require_chain_map(const GradedMap& f) {
  for (int d = 0; d <= f.source().top_dim() + 1; ++d) {
    const IntMatrix lhs = f.target().boundary(d + f.degree()) * f.block(d);
    const IntMatrix rhs = f.block(d - 1) * f.source().boundary(d);
    if (!(lhs == rhs)) throw NotAChainMap("d f != f d on dimension " + std::to_string(d) + " cells");
  }
}

// ---------------------------------------------------------------- homology

std::string HomologyGroup::to_string(BaseField ring) const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  const std::string free_symbol = ring == BaseField::GF2 ? "F2" : "Z";
  if (free_rank == 1) parts.push_back(free_symbol);
  if (free_rank > 1) parts.push_back(free_symbol + "^" + std::to_string(free_rank));
  for (const auto t : torsion) parts.push_back("Z/" + std::to_string(t));
  std::string out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

std::vector<HomologyGroup> homology(const CWComplex& c) {
  std::vector<SmithForm> forms;
  for (int d = 0; d <= c.top_dim() + 1; ++d) forms.push_back(smith_normal_form(c.boundary(d)));
  std::vector<HomologyGroup> out;
  for (int d = 0; d <= c.top_dim(); ++d) {
    HomologyGroup h;
    h.dim = d;
    const auto& here = forms[static_cast<std::size_t>(d)];
    const auto& above = forms[static_cast<std::size_t>(d + 1)];
    h.free_rank = c.count(d) - here.rank - above.rank;
    for (const auto f : above.invariant_factors()) {
      if (f > 1) h.torsion.push_back(f);
    }
    out.push_back(std::move(h));
  }
  return out;
}

bool is_acyclic(const CWComplex& c) {
  const auto h = homology(c);
  return std::all_of(h.begin(), h.end(), [](const HomologyGroup& g) { return g.is_zero(); });
}

CWComplex mapping_cone(const GradedMap& f) {
  if (f.degree() != 0) throw InvalidInput("mapping cone needs a degree-0 map");
  const CWComplex& a = f.source();
  const CWComplex& b = f.target();
  std::vector<Cell> cells;
  for (int d = 0; d <= a.top_dim(); ++d) {
    for (const auto& x : a.cells(d)) cells.push_back({"s:" + x, d + 1});
  }
  for (int d = 0; d <= b.top_dim(); ++d) {
    for (const auto& y : b.cells(d)) cells.push_back({"t:" + y, d});
  }
  CWComplex cone(a.ring(), cells);
  for (int d = 0; d <= a.top_dim(); ++d) {
    const IntMatrix da = a.boundary(d);
    const IntMatrix fd = f.block(d);
    for (std::size_t j = 0; j < a.count(d); ++j) {
      const std::string src = "s:" + a.cells(d)[j];
      for (std::size_t i = 0; i < da.rows(); ++i) {
        if (da(i, j) != 0) cone.add_boundary(src, "s:" + a.cells(d - 1)[i], -da(i, j));
      }
      for (std::size_t i = 0; i < fd.rows(); ++i) {
        if (fd(i, j) != 0) cone.add_boundary(src, "t:" + b.cells(d)[i], fd(i, j));
      }
    }
  }
  for (int d = 1; d <= b.top_dim(); ++d) {
    const IntMatrix db = b.boundary(d);
    for (std::size_t j = 0; j < b.count(d); ++j) {
      for (std::size_t i = 0; i < db.rows(); ++i) {
        if (db(i, j) != 0) cone.add_boundary("t:" + b.cells(d)[j], "t:" + b.cells(d - 1)[i], db(i, j));
      }
    }
  }
  return cone;
}

bool is_quasi_iso(const GradedMap& f) { return is_acyclic(mapping_cone(f)); }

// ---------------------------------------------------------------- cochains

Cochain zero_cochain(const CWComplex& c, int dim) { return {dim, std::vector<std::int64_t>(c.count(dim), 0)}; }

std::int64_t evaluate(const CWComplex& c, const Cochain& phi, const std::string& cell) {
  const auto [d, i] = c.locate(cell);
  if (d != phi.dim) return 0;
  return phi.values.at(i);
}

Cochain coboundary(const CWComplex& c, const Cochain& phi) {
  Cochain out{phi.dim + 1, c.boundary(phi.dim + 1).transpose().apply(phi.values)};
  return out;
}

Cochain pullback(const GradedMap& f, const Cochain& phi) {
  if (f.degree() != 0) throw InvalidInput("pullback needs a degree-0 map");
  return {phi.dim, f.block(phi.dim).transpose().apply(phi.values)};
}

bool cohomologous(const CWComplex& c, const Cochain& a, const Cochain& b) {
  if (a.dim != b.dim) return false;
  std::vector<std::int64_t> diff(a.values.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = normalize_entry(c.ring(), checked_add(a.values[i], checked_mul(b.values.at(i), -1)));
  }
  return solve(c.boundary(a.dim).transpose(), diff).has_value();
}

// ---------------------------------------------------------------- diagonals and caps

Diagonal vertex_diagonal(const CWComplex& c) {
  if (c.count(0) != 1) throw InvalidInput("vertex diagonal needs exactly one 0-cell");
  const std::string& v = c.cells(0).front();
  Diagonal out;
  for (int d = 0; d <= c.top_dim(); ++d) {
    for (const auto& s : c.cells(d)) {
      if (d == 0) {
        out[s] = {{1, v, v}};
      } else {
        out[s] = {{1, v, s}, {1, s, v}};
      }
    }
  }
  return out;
}

namespace {

using Tensor = std::map<std::pair<std::string, std::string>, std::int64_t>;

void tensor_add(Tensor& t, BaseField ring, const std::string& l, const std::string& r, std::int64_t coef) {
  auto& slot = t[{l, r}];
  slot = normalize_entry(ring, checked_add(slot, coef));
  if (slot == 0) t.erase({l, r});
}

// Boundary of one cell as (cell, coef) pairs.
std::vector<std::pair<std::string, std::int64_t>> boundary_of(const CWComplex& c, const std::string& cell) {
  const auto [d, j] = c.locate(cell);
  std::vector<std::pair<std::string, std::int64_t>> out;
  const IntMatrix m = c.boundary(d);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, j) != 0) out.emplace_back(c.cells(d - 1)[i], m(i, j));
  }
  return out;
}

const std::vector<DiagonalTerm>& diagonal_of(const Diagonal& diag, const std::string& cell) {
  const auto it = diag.find(cell);
  if (it == diag.end()) throw InvalidInput("diagonal has no entry for cell " + cell);
  return it->second;
}

// Product of a base diagonal with the two-cell sphere diagonal, Koszul signs.
Diagonal product_diagonal(const CWComplex& base, const Diagonal& base_diag, int k) {
  const auto fiber_terms = [k](int x) -> std::vector<std::pair<int, int>> {
    if (x == 0) return {{0, 0}};
    return {{0, k}, {k, 0}};
  };
  Diagonal out;
  for (int d = 0; d <= base.top_dim(); ++d) {
    for (const auto& s : base.cells(d)) {
      for (const int x : {0, k}) {
        auto& terms = out[top_label(s, x)];
        for (const auto& t : diagonal_of(base_diag, s)) {
          const int right_dim = base.locate(t.right).first;
          for (const auto& [x1, x2] : fiber_terms(x)) {
            const std::int64_t sign = (right_dim * x1) % 2 == 0 ? 1 : -1;
            terms.push_back({t.coef * sign, top_label(t.left, x1), top_label(t.right, x2)});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

void require_diagonal_chain_map(const CWComplex& c, const Diagonal& diag) {
  for (int d = 0; d <= c.top_dim(); ++d) {
    for (const auto& s : c.cells(d)) {
      Tensor lhs;
      for (const auto& t : diagonal_of(diag, s)) {
        const int left_dim = c.locate(t.left).first;
        if (left_dim + c.locate(t.right).first != d) {
          throw InvalidInput("diagonal term " + t.left + " (x) " + t.right + " of cell " + s + " has the wrong dimension");
        }
        for (const auto& [l, a] : boundary_of(c, t.left)) tensor_add(lhs, c.ring(), l, t.right, checked_mul(t.coef, a));
        const std::int64_t sign = left_dim % 2 == 0 ? 1 : -1;
        for (const auto& [r, a] : boundary_of(c, t.right)) {
          tensor_add(lhs, c.ring(), t.left, r, checked_mul(sign, checked_mul(t.coef, a)));
        }
      }
      Tensor rhs;
      for (const auto& [x, a] : boundary_of(c, s)) {
        for (const auto& t : diagonal_of(diag, x)) tensor_add(rhs, c.ring(), t.left, t.right, checked_mul(a, t.coef));
      }
      if (lhs != rhs) throw NotAChainMap("diagonal does not commute with the boundary on cell " + s);
    }
  }
}

GradedMap cap(const CWComplex& c, const Diagonal& diag, const Cochain& phi) {
  GradedMap out(c, c, -phi.dim);
  for (int d = 0; d <= c.top_dim(); ++d) {
    for (const auto& s : c.cells(d)) {
      for (const auto& t : diagonal_of(diag, s)) {
        const int ld = c.locate(t.left).first;
        const int rd = c.locate(t.right).first;
        if (ld + rd != d) throw InvalidInput("cap-product degree mismatch on cell " + s);
        if (rd != phi.dim) continue;
        const std::int64_t v = evaluate(c, phi, t.right);
        if (v != 0) out.add(s, t.left, checked_mul(t.coef, v));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- models

CWComplex sphere(int m, BaseField ring) {
  if (m < 1) throw InvalidInput("sphere dimension must be positive");
  return CWComplex(ring, {{"v", 0}, {"e" + std::to_string(m), m}});
}

CWComplex torus(BaseField ring) { return CWComplex(ring, {{"v", 0}, {"a", 1}, {"b", 1}, {"f", 2}}); }

SphereBundleModel twisted_product(
    const std::string& name, const CWComplex& base, int k,
    const std::map<std::string, std::vector<std::pair<std::string, std::int64_t>>>& twisting) {
  if (k < 1) throw InvalidInput("fiber dimension must be positive");
  const BaseField ring = base.ring();
  std::vector<Cell> cells;
  for (int d = 0; d <= base.top_dim(); ++d) {
    for (const auto& s : base.cells(d)) {
      cells.push_back({top_label(s, 0), d});
      cells.push_back({top_label(s, k), d + k});
    }
  }
  CWComplex total(ring, cells);
  for (int d = 1; d <= base.top_dim(); ++d) {
    for (const auto& s : base.cells(d)) {
      for (const auto& [t, a] : boundary_of(base, s)) {
        total.add_boundary(top_label(s, 0), top_label(t, 0), a);
        total.add_boundary(top_label(s, k), top_label(t, k), a);
      }
    }
  }
  for (const auto& [s, image] : twisting) {
    for (const auto& [t, a] : image) total.add_boundary(top_label(s, 0), top_label(t, k), a);
  }

  SphereBundleModel m;
  m.name = name;
  m.ring = ring;
  m.fiber_dim = k;
  m.base = base;
  m.total = total;
  m.rho_push = GradedMap(total, base, 0);
  m.rho_transfer = GradedMap(base, total, k);
  for (int d = 0; d <= base.top_dim(); ++d) {
    for (const auto& s : base.cells(d)) {
      m.rho_push.add(top_label(s, 0), s, 1);
      m.rho_transfer.add(s, top_label(s, k), 1);
    }
  }
  m.base_diagonal = vertex_diagonal(base);
  m.total_diagonal = product_diagonal(base, m.base_diagonal, k);
  m.fiber_cycle.assign(total.count(k), 0);
  m.fiber_cycle[total.locate(top_label(base.cells(0).front(), k)).second] = 1;
  const Transgression tr = euler_from_transgression(m);
  m.euler = tr.euler;
  m.angular = tr.angular;
  validate_model(m);
  return m;
}

SphereBundleModel product_bundle(const std::string& base_name, int k, BaseField ring) {
  CWComplex base;
  if (base_name == "T2") {
    base = torus(ring);
  } else if (base_name.size() >= 2 && base_name[0] == 'S') {
    int m = 0;
    try {
      m = std::stoi(base_name.substr(1));
    } catch (const std::exception&) {
      throw InvalidInput("unknown product base " + base_name);
    }
    base = sphere(m, ring);
  } else {
    throw InvalidInput("unknown product base " + base_name);
  }
  return twisted_product("product_" + base_name + "_" + std::to_string(k), base, k, {});
}

SphereBundleModel hopf_s1(BaseField ring) { return twisted_product("hopf_s1", sphere(2, ring), 1, {{"e2", {{"v", 1}}}}); }

SphereBundleModel hopf_s3(BaseField ring) { return twisted_product("hopf_s3", sphere(4, ring), 3, {{"e4", {{"v", 1}}}}); }

SphereBundleModel unit_tangent_s2(BaseField ring) {
  return twisted_product("unit_tangent_s2", sphere(2, ring), 1, {{"e2", {{"v", 2}}}});
}

SphereBundleModel build_model(const std::string& kind, BaseField ring) {
  if (kind == "hopf_s1") return hopf_s1(ring);
  if (kind == "hopf_s3") return hopf_s3(ring);
  if (kind == "unit_tangent_s2") return unit_tangent_s2(ring);
  if (kind.rfind("custom:", 0) == 0) return load_bundle_model(kind.substr(7));
  if (kind.rfind("product:", 0) == 0) {
    const std::string rest = kind.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw InvalidInput("product kind is product:<base>:<k>");
    int k = 0;
    try {
      k = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidInput("bad fiber dimension in " + kind);
    }
    return product_bundle(rest.substr(0, colon), k, ring);
  }
  throw InvalidInput("unknown model kind " + kind);
}

Transgression euler_from_transgression(const SphereBundleModel& m, std::int64_t variant) {
  const int k = m.fiber_dim;
  const BaseField ring = m.ring;
  const std::size_t nk = m.total.count(k);
  const std::size_t nk1 = m.total.count(k + 1);
  const std::size_t nb = m.base.count(k + 1);
  if (m.fiber_cycle.size() != nk) throw InvalidInput("fiber cycle has the wrong length");

  // Unknowns: w on total k-cells, then y on base (k+1)-cells.
  IntMatrix a(nk1 + 1, nk + nb, ring);
  const IntMatrix d = m.total.boundary(k + 1);
  const IntMatrix rho = m.rho_push.block(k + 1);
  for (std::size_t j = 0; j < nk1; ++j) {
    for (std::size_t i = 0; i < nk; ++i) a.set(j, i, d(i, j));
    for (std::size_t l = 0; l < nb; ++l) a.set(j, nk + l, checked_mul(rho(l, j), -1));
  }
  for (std::size_t i = 0; i < nk; ++i) a.set(nk1, i, m.fiber_cycle[i]);
  std::vector<std::int64_t> rhs(nk1 + 1, 0);
  rhs[nk1] = 1;
  auto x = solve(a, rhs);
  if (!x) {
    // Obstruction: some combination of the equations forces psi(fiber) to be
    // 0 or a proper multiple.
    throw Error("no angular cochain solves d psi = rho^* e with psi = 1 on the fiber cycle; the fiber cycle is "
                "not primitive modulo the transgression relations");
  }
  if (variant != 0) {
    const IntMatrix ker = kernel_basis(a);
    for (std::size_t c = 0; c < ker.cols(); ++c) {
      for (std::size_t r = 0; r < ker.rows(); ++r) {
        (*x)[r] = normalize_entry(ring, checked_add((*x)[r], checked_mul(variant, ker(r, c))));
      }
    }
  }
  Transgression out;
  out.angular = {k, std::vector<std::int64_t>(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(nk))};
  out.euler = {k + 1, std::vector<std::int64_t>(x->begin() + static_cast<std::ptrdiff_t>(nk), x->end())};
  return out;
}

void validate_model(const SphereBundleModel& m) {
  const int k = m.fiber_dim;
  if (k < 1) throw InvalidInput("fiber dimension must be positive");
  m.base.validate();
  m.total.validate();
  if (m.rho_push.degree() != 0 || m.rho_transfer.degree() != k) throw InvalidInput("projection or transfer degree");
  try {
    require_chain_map(m.rho_push);
    require_chain_map(m.rho_transfer);
  } catch (const NotAChainMap& e) {
    throw InvalidInput(std::string("projection or transfer: ") + e.what());
  }
  const IntMatrix rho = m.rho_push.block(k + 1);
  for (std::size_t l = 0; l < m.base.count(k + 1); ++l) {
    std::vector<std::int64_t> e(m.base.count(k + 1), 0);
    e[l] = 1;
    if (!solve(rho, e)) throw InvalidInput("rho^* is not injective on (k+1)-cochains");
  }
  if (m.fiber_cycle.size() != m.total.count(k)) throw InvalidInput("fiber cycle has the wrong length");
  const auto fiber_boundary = m.total.boundary(k).apply(m.fiber_cycle);
  if (!std::all_of(fiber_boundary.begin(), fiber_boundary.end(), [](std::int64_t v) { return v == 0; })) {
    throw InvalidInput("fiber cycle is not a cycle");
  }
  if (m.angular.dim != k || m.angular.values.size() != m.total.count(k)) throw InvalidInput("angular cochain shape");
  if (m.euler.dim != k + 1 || m.euler.values.size() != m.base.count(k + 1)) throw InvalidInput("Euler cochain shape");
  std::int64_t on_fiber = 0;
  for (std::size_t i = 0; i < m.fiber_cycle.size(); ++i) {
    on_fiber = checked_add(on_fiber, checked_mul(m.angular.values[i], m.fiber_cycle[i]));
  }
  if (normalize_entry(m.ring, on_fiber) != 1) throw InvalidInput("psi does not evaluate to 1 on the fiber cycle");
  const Cochain de = coboundary(m.base, m.euler);
  if (!std::all_of(de.values.begin(), de.values.end(), [](std::int64_t v) { return v == 0; })) {
    throw InvalidInput("the Euler cochain is not a cocycle");
  }
  if (!(coboundary(m.total, m.angular) == pullback(m.rho_push, m.euler))) {
    throw InvalidInput("d psi != rho^* e");
  }
  try {
    require_diagonal_chain_map(m.base, m.base_diagonal);
  } catch (const NotAChainMap& e) {
    throw InvalidInput(std::string("base ") + e.what());
  }
}

GradedMap euler_cap(const SphereBundleModel& m) { return cap(m.base, m.base_diagonal, m.euler); }

CPsiResult build_CPsi(const SphereBundleModel& m) {
  const int k = m.fiber_dim;
  const CWComplex& base = m.base;
  std::vector<Cell> cells;
  for (int d = 0; d <= base.top_dim(); ++d) {
    for (const auto& x : base.cells(d)) cells.push_back({"s:" + x, d});
  }
  for (int d = 0; d <= base.top_dim(); ++d) {
    for (const auto& y : base.cells(d)) cells.push_back({"t:" + y, d + k});
  }
  CWComplex cone(m.ring, cells);
  const GradedMap e = euler_cap(m);
  for (int d = 0; d <= base.top_dim(); ++d) {
    const IntMatrix e_block = e.block(d);
    const std::int64_t sign = (d + k + 1) % 2 == 0 ? 1 : -1;
    for (std::size_t j = 0; j < base.count(d); ++j) {
      const std::string& x = base.cells(d)[j];
      for (const auto& [t, a] : boundary_of(base, x)) {
        cone.add_boundary("s:" + x, "s:" + t, a);
        cone.add_boundary("t:" + x, "t:" + t, a);
      }
      for (std::size_t i = 0; i < e_block.rows(); ++i) {
        if (e_block(i, j) != 0) cone.add_boundary("s:" + x, "t:" + base.cells(d - k - 1)[i], sign * e_block(i, j));
      }
    }
  }
  cone.validate();

  const GradedMap psi_transfer = compose(cap(m.total, m.total_diagonal, m.angular), m.rho_transfer);
  CPsiResult out{cone, GradedMap(cone, m.total, 0), false};
  for (int d = 0; d <= base.top_dim(); ++d) {
    for (const auto& x : base.cells(d)) {
      for (int td = 0; td <= m.total.top_dim(); ++td) {
        for (const auto& y : m.total.cells(td)) {
          if (td == d) {
            const std::int64_t a = psi_transfer.at(x, y);
            if (a != 0) out.map.add("s:" + x, y, a);
          }
          if (td == d + k) {
            const std::int64_t b = m.rho_transfer.at(x, y);
            if (b != 0) out.map.add("t:" + x, y, b);
          }
        }
      }
    }
  }
  require_chain_map(out.map);
  out.quasi_iso = is_quasi_iso(out.map);
  return out;
}

// ---------------------------------------------------------------- exactness

bool exact_at(const GradedMap& f, const GradedMap& g, int dim) {
  const CWComplex& a = f.source();
  const CWComplex& b = f.target();
  const CWComplex& c = g.target();
  const BaseField ring = b.ring();
  const int a_dim = dim - f.degree();
  const int c_dim = dim + g.degree();

  const IntMatrix image = f.block(a_dim) * kernel_basis(a.boundary(a_dim));
  const IntMatrix im_lattice = image.hconcat(b.boundary(dim + 1));

  const IntMatrix db = b.boundary(dim);
  const IntMatrix gb = g.block(dim);
  const IntMatrix dc = c.boundary(c_dim + 1);
  const std::size_t nb = b.count(dim);
  IntMatrix system(db.rows() + gb.rows(), nb + dc.cols(), ring);
  for (std::size_t j = 0; j < nb; ++j) {
    for (std::size_t i = 0; i < db.rows(); ++i) system.set(i, j, db(i, j));
    for (std::size_t i = 0; i < gb.rows(); ++i) system.set(db.rows() + i, j, gb(i, j));
  }
  for (std::size_t j = 0; j < dc.cols(); ++j) {
    for (std::size_t i = 0; i < dc.rows(); ++i) system.set(db.rows() + i, nb + j, checked_mul(dc(i, j), -1));
  }
  const IntMatrix ker = kernel_basis(system);
  IntMatrix ker_lattice(nb, ker.cols(), ring);
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    for (std::size_t i = 0; i < nb; ++i) ker_lattice.set(i, j, ker(i, j));
  }
  return lattice_contains(ker_lattice, im_lattice) && lattice_contains(im_lattice, ker_lattice);
}

GysinReport gysin_exactness(const SphereBundleModel& m) {
  GysinReport out;
  out.base_homology = homology(m.base);
  out.total_homology = homology(m.total);
  const GradedMap e = euler_cap(m);
  const int top = std::max(m.base.top_dim(), m.total.top_dim());
  for (int j = 0; j <= top; ++j) {
    out.nodes.push_back({"H(V)", j, exact_at(m.rho_transfer, m.rho_push, j)});
    out.nodes.push_back({"H(N)", j, exact_at(m.rho_push, e, j)});
    out.nodes.push_back({"H(N)'", j, exact_at(e, m.rho_transfer, j)});
  }
  out.exact = std::all_of(out.nodes.begin(), out.nodes.end(), [](const ExactnessNode& n) { return n.exact; });
  return out;
}

// ---------------------------------------------------------------- mod 2

namespace {

CWComplex complex_mod2(const CWComplex& c) {
  std::vector<Cell> cells;
  for (int d = 0; d <= c.top_dim(); ++d) {
    for (const auto& s : c.cells(d)) cells.push_back({s, d});
  }
  CWComplex out(BaseField::GF2, cells);
  for (int d = 1; d <= c.top_dim(); ++d) {
    for (const auto& s : c.cells(d)) {
      for (const auto& [t, a] : boundary_of(c, s)) out.add_boundary(s, t, a);
    }
  }
  return out;
}

GradedMap map_mod2(const GradedMap& f, const CWComplex& src, const CWComplex& tgt) {
  GradedMap out(src, tgt, f.degree());
  for (int d = 0; d <= src.top_dim(); ++d) out.set_block(d, f.block(d).mod2());
  return out;
}

Cochain cochain_mod2(const Cochain& c) {
  Cochain out = c;
  for (auto& v : out.values) v &= 1;
  return out;
}

}  // namespace

SphereBundleModel reduce_mod2(const SphereBundleModel& m) {
  SphereBundleModel out = m;
  out.ring = BaseField::GF2;
  out.base = complex_mod2(m.base);
  out.total = complex_mod2(m.total);
  out.rho_push = map_mod2(m.rho_push, out.total, out.base);
  out.rho_transfer = map_mod2(m.rho_transfer, out.base, out.total);
  out.euler = cochain_mod2(m.euler);
  out.angular = cochain_mod2(m.angular);
  for (auto& v : out.fiber_cycle) v &= 1;
  validate_model(out);
  return out;
}

// ---------------------------------------------------------------- file format

void write_bundle_model(std::ostream& os, const SphereBundleModel& m) {
  os << dump_line({{"kind", "header"}, {"name", m.name}, {"ring", std::string(to_string(m.ring))},
                   {"fiber_dim", m.fiber_dim}});
  const std::pair<const char*, const CWComplex*> spaces[] = {{"base", &m.base}, {"total", &m.total}};
  for (const auto& [space, cx] : spaces) {
    for (int d = 0; d <= cx->top_dim(); ++d) {
      for (const auto& s : cx->cells(d)) os << dump_line({{"kind", "cell"}, {"space", space}, {"label", s}, {"dim", d}});
    }
  }
  for (const auto& [space, cx] : spaces) {
    for (int d = 1; d <= cx->top_dim(); ++d) {
      for (const auto& s : cx->cells(d)) {
        for (const auto& [t, a] : boundary_of(*cx, s)) {
          os << dump_line({{"kind", "boundary"}, {"space", space}, {"from", s}, {"to", t}, {"coef", a}});
        }
      }
    }
  }
  const std::pair<const char*, const GradedMap*> maps[] = {{"rho_push", &m.rho_push},
                                                           {"rho_transfer", &m.rho_transfer}};
  for (const auto& [kind, f] : maps) {
    for (int d = 0; d <= f->source().top_dim(); ++d) {
      const IntMatrix blk = f->block(d);
      for (std::size_t j = 0; j < blk.cols(); ++j) {
        for (std::size_t i = 0; i < blk.rows(); ++i) {
          if (blk(i, j) == 0) continue;
          os << dump_line({{"kind", kind},
                           {"from", f->source().cells(d)[j]},
                           {"to", f->target().cells(d + f->degree())[i]},
                           {"coef", blk(i, j)}});
        }
      }
    }
  }
  const auto write_values = [&](const char* kind, const CWComplex& cx, int dim, const std::vector<std::int64_t>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) os << dump_line({{"kind", kind}, {"cell", cx.cells(dim)[i]}, {"coef", v[i]}});
    }
  };
  write_values("fiber_cycle", m.total, m.fiber_dim, m.fiber_cycle);
  write_values("euler", m.base, m.euler.dim, m.euler.values);
  write_values("angular", m.total, m.angular.dim, m.angular.values);
  const std::pair<const char*, const Diagonal*> diags[] = {{"base", &m.base_diagonal}, {"total", &m.total_diagonal}};
  for (const auto& [space, diag] : diags) {
    for (const auto& [cell, terms] : *diag) {
      for (const auto& t : terms) {
        os << dump_line({{"kind", "diagonal"},
                         {"space", space},
                         {"cell", cell},
                         {"left", t.left},
                         {"right", t.right},
                         {"coef", t.coef}});
      }
    }
  }
}

SphereBundleModel read_bundle_model(std::istream& is) {
  std::vector<std::pair<std::size_t, Json>> lines;
  std::string text;
  std::size_t n = 0;
  while (std::getline(is, text)) {
    ++n;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json j = Json::parse(text);
      if (!j.is_object() || !j.contains("kind")) throw ParseError(n, "expected an object with a \"kind\" field");
      lines.emplace_back(n, std::move(j));
    } catch (const Json::exception& ex) {
      throw ParseError(n, ex.what());
    }
  }
  if (lines.empty() || lines.front().second.at("kind") != "header") {
    throw ParseError(lines.empty() ? 1 : lines.front().first, "file must start with a header line");
  }

  SphereBundleModel m;
  std::vector<Cell> base_cells;
  std::vector<Cell> total_cells;
  try {
    const Json& h = lines.front().second;
    m.name = h.value("name", std::string("custom"));
    m.ring = parse_base_field(h.at("ring").get<std::string>());
    if (m.ring == BaseField::Rationals) throw InvalidInput("bundle models take Integers or GF2");
    m.fiber_dim = h.at("fiber_dim").get<int>();
  } catch (const Json::exception& ex) {
    throw ParseError(lines.front().first, ex.what());
  } catch (const Error& ex) {
    throw ParseError(lines.front().first, ex.what());
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [ln, j] = lines[i];
    if (j.at("kind") != "cell") continue;
    try {
      const std::string space = j.at("space").get<std::string>();
      Cell c{j.at("label").get<std::string>(), j.at("dim").get<int>()};
      if (space == "base") {
        base_cells.push_back(std::move(c));
      } else if (space == "total") {
        total_cells.push_back(std::move(c));
      } else {
        throw ParseError(ln, "space must be base or total");
      }
    } catch (const Json::exception& ex) {
      throw ParseError(ln, ex.what());
    }
  }
  try {
    m.base = CWComplex(m.ring, base_cells);
    m.total = CWComplex(m.ring, total_cells);
  } catch (const Error& ex) {
    throw ParseError(lines.front().first, ex.what());
  }
  // Boundaries first: the maps copy their source and target complexes.
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [ln, j] = lines[i];
    if (j.at("kind") != "boundary") continue;
    try {
      CWComplex& cx = j.at("space") == "base" ? m.base : m.total;
      cx.add_boundary(j.at("from").get<std::string>(), j.at("to").get<std::string>(), j.at("coef").get<std::int64_t>());
    } catch (const Json::exception& ex) {
      throw ParseError(ln, ex.what());
    } catch (const Error& ex) {
      throw ParseError(ln, ex.what());
    }
  }
  m.rho_push = GradedMap(m.total, m.base, 0);
  m.rho_transfer = GradedMap(m.base, m.total, m.fiber_dim);
  m.fiber_cycle.assign(m.total.count(m.fiber_dim), 0);
  std::optional<Cochain> euler;
  std::optional<Cochain> angular;
  Diagonal base_diag;
  Diagonal total_diag;

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [ln, j] = lines[i];
    try {
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "cell" || kind == "boundary") continue;
      if (kind == "rho_push" || kind == "rho_transfer") {
        GradedMap& f = kind == "rho_push" ? m.rho_push : m.rho_transfer;
        f.add(j.at("from").get<std::string>(), j.at("to").get<std::string>(), j.at("coef").get<std::int64_t>());
      } else if (kind == "fiber_cycle" || kind == "angular") {
        const auto [d, idx] = m.total.locate(j.at("cell").get<std::string>());
        if (d != m.fiber_dim) throw ParseError(ln, kind + " cell must have the fiber dimension");
        const std::int64_t v = normalize_entry(m.ring, j.at("coef").get<std::int64_t>());
        if (kind == "fiber_cycle") {
          m.fiber_cycle[idx] = v;
        } else {
          if (!angular) angular = zero_cochain(m.total, m.fiber_dim);
          angular->values[idx] = v;
        }
      } else if (kind == "euler") {
        const auto [d, idx] = m.base.locate(j.at("cell").get<std::string>());
        if (d != m.fiber_dim + 1) throw ParseError(ln, "euler cell must have dimension k + 1");
        if (!euler) euler = zero_cochain(m.base, m.fiber_dim + 1);
        euler->values[idx] = normalize_entry(m.ring, j.at("coef").get<std::int64_t>());
      } else if (kind == "diagonal") {
        Diagonal& diag = j.at("space") == "base" ? base_diag : total_diag;
        diag[j.at("cell").get<std::string>()].push_back(
            {j.at("coef").get<std::int64_t>(), j.at("left").get<std::string>(), j.at("right").get<std::string>()});
      } else {
        throw ParseError(ln, "unknown line kind " + kind);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Json::exception& ex) {
      throw ParseError(ln, ex.what());
    } catch (const Error& ex) {
      throw ParseError(ln, ex.what());
    }
  }

  m.base_diagonal = base_diag.empty() ? vertex_diagonal(m.base) : base_diag;
  if (total_diag.empty()) {
    for (int d = 0; d <= m.base.top_dim(); ++d) {
      for (const auto& s : m.base.cells(d)) {
        if (!m.total.has(top_label(s, 0)) || !m.total.has(top_label(s, m.fiber_dim))) {
          throw InvalidInput("total cells lack twisted-product labels; supply total diagonal lines");
        }
      }
    }
    if (m.total.total_cells() != 2 * m.base.total_cells()) {
      throw InvalidInput("total cells lack twisted-product labels; supply total diagonal lines");
    }
    m.total_diagonal = product_diagonal(m.base, m.base_diagonal, m.fiber_dim);
  } else {
    m.total_diagonal = total_diag;
  }
  if (euler.has_value() != angular.has_value()) throw InvalidInput("give both euler and angular lines or neither");
  if (euler) {
    m.euler = *euler;
    m.angular = *angular;
  } else {
    const Transgression tr = euler_from_transgression(m);
    m.euler = tr.euler;
    m.angular = tr.angular;
  }
  validate_model(m);
  return m;
}

SphereBundleModel load_bundle_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return read_bundle_model(in);
}

}  // namespace novikov::classical
