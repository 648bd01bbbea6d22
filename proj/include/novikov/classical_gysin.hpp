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

// Cellular sphere-bundle models over the integers or GF2.
//
// Curated models are twisted products: every base cell s gives total cells
// "s|0" (s times the fiber basepoint) and "s|k" (s times the fiber top cell),
// with
//   d(s|0) = (ds)|0 + tau(s)|k,    d(s|k) = (ds)|k,
// where tau is the twisting (transgression) chain map of degree -k-1.
//
// Custom model file, one JSON object per line:
//   {"kind":"header","name":"...","ring":"Integers","fiber_dim":1}
//   {"kind":"cell","space":"base","label":"v","dim":0}          (space: base|total)
//   {"kind":"boundary","space":"total","from":"e2|0","to":"v|1","coef":2}
//   {"kind":"rho_push","from":"e2|0","to":"e2","coef":1}
//   {"kind":"rho_transfer","from":"e2","to":"e2|1","coef":1}
//   {"kind":"fiber_cycle","cell":"v|1","coef":1}
// Optional lines: "euler" and "angular" ({"cell","coef"}) and "diagonal"
// ({"space","cell","left","right","coef"}). Without diagonal lines the base
// uses the vertex diagonal and the total uses the product diagonal, which
// needs twisted-product labels.

#ifndef NOVIKOV_CLASSICAL_GYSIN_HPP
#define NOVIKOV_CLASSICAL_GYSIN_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "novikov/integer_matrix.hpp"

namespace novikov::classical {

struct Cell {
  std::string label;
  int dim = 0;
};

/// Free chain complex on labelled cells, graded by dimension.
class CWComplex {
 public:
  CWComplex() = default;
  CWComplex(BaseField ring, const std::vector<Cell>& cells);

  [[nodiscard]] BaseField ring() const noexcept { return ring_; }
  /// -1 when there are no cells.
  [[nodiscard]] int top_dim() const noexcept { return static_cast<int>(cells_.size()) - 1; }
  [[nodiscard]] std::size_t count(int dim) const;
  [[nodiscard]] const std::vector<std::string>& cells(int dim) const;
  [[nodiscard]] std::size_t total_cells() const;
  [[nodiscard]] bool has(const std::string& label) const { return index_.count(label) != 0; }
  /// (dim, index within dim); throws InvalidInput for unknown labels.
  [[nodiscard]] std::pair<int, std::size_t> locate(const std::string& label) const;

  /// Boundary from dim to dim - 1, shape count(dim-1) x count(dim).
  [[nodiscard]] IntMatrix boundary(int dim) const;
  /// d(source) gains coef * target; dims must differ by one.
  void add_boundary(const std::string& source, const std::string& target, std::int64_t coef);

  /// Throws NotADifferential naming a dimension where dd != 0.
  void validate() const;

 private:
  BaseField ring_ = BaseField::Integers;
  std::vector<std::vector<std::string>> cells_;
  std::unordered_map<std::string, std::pair<int, std::size_t>> index_;
  std::vector<IntMatrix> boundary_;
};

/// Degree-shifting module map between two cell complexes; block(d) sends
/// dim d cells of the source to dim d + degree cells of the target.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(CWComplex source, CWComplex target, int degree);

  [[nodiscard]] const CWComplex& source() const noexcept { return source_; }
  [[nodiscard]] const CWComplex& target() const noexcept { return target_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] IntMatrix block(int dim) const;
  void add(const std::string& source, const std::string& target, std::int64_t coef);
  /// Replace block(dim); the shape must match.
  void set_block(int dim, IntMatrix block);
  [[nodiscard]] std::int64_t at(const std::string& source, const std::string& target) const;

 private:
  CWComplex source_;
  CWComplex target_;
  int degree_ = 0;
  std::vector<IntMatrix> blocks_;
};

/// g o f.
[[nodiscard]] GradedMap compose(const GradedMap& g, const GradedMap& f);

/// Throws NotAChainMap naming the first dimension where d f != f d.
void require_chain_map(const GradedMap& f);

struct HomologyGroup {
  int dim = 0;
  std::size_t free_rank = 0;
  /// Invariant factors > 1 (integers only).
  std::vector<std::int64_t> torsion;

  [[nodiscard]] bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  /// "Z^2 + Z/2", "0", or "F2^3" over GF2.
  [[nodiscard]] std::string to_string(BaseField ring) const;

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Homology in every dimension 0..top_dim, by Smith normal form.
[[nodiscard]] std::vector<HomologyGroup> homology(const CWComplex& c);
[[nodiscard]] bool is_acyclic(const CWComplex& c);

/// Cone of a degree-0 chain map: cells "s:a" in dim(a)+1 and "t:b", with
/// d(s:a) = -s:da + t:f(a) and d(t:b) = t:db.
[[nodiscard]] CWComplex mapping_cone(const GradedMap& f);
[[nodiscard]] bool is_quasi_iso(const GradedMap& f);

/// Values on the cells of one dimension, in cell order.
struct Cochain {
  int dim = 0;
  std::vector<std::int64_t> values;

  friend bool operator==(const Cochain&, const Cochain&) = default;
};

[[nodiscard]] Cochain zero_cochain(const CWComplex& c, int dim);
[[nodiscard]] std::int64_t evaluate(const CWComplex& c, const Cochain& phi, const std::string& cell);
/// (delta phi)(x) = phi(dx).
[[nodiscard]] Cochain coboundary(const CWComplex& c, const Cochain& phi);
/// Pullback along a degree-0 map: (f^* phi)(x) = phi(f x).
[[nodiscard]] Cochain pullback(const GradedMap& f, const Cochain& phi);
/// True when a - b is a coboundary.
[[nodiscard]] bool cohomologous(const CWComplex& c, const Cochain& a, const Cochain& b);

struct DiagonalTerm {
  std::int64_t coef = 0;
  std::string left;
  std::string right;
};

/// Cellular diagonal: cell label -> sum of coef * left (x) right.
using Diagonal = std::map<std::string, std::vector<DiagonalTerm>>;

/// D(v) = v (x) v and D(s) = v (x) s + s (x) v for the single 0-cell v.
[[nodiscard]] Diagonal vertex_diagonal(const CWComplex& c);
/// Throws NotAChainMap when (d (x) 1 + 1 (x) d) D != D d.
void require_diagonal_chain_map(const CWComplex& c, const Diagonal& diag);

/// Cap product phi ^ x = sum coef * phi(right) * left, a map of degree
/// -phi.dim.
[[nodiscard]] GradedMap cap(const CWComplex& c, const Diagonal& diag, const Cochain& phi);

struct SphereBundleModel {
  std::string name;
  BaseField ring = BaseField::Integers;
  int fiber_dim = 1;
  CWComplex base;
  CWComplex total;
  GradedMap rho_push;      ///< total -> base, degree 0
  GradedMap rho_transfer;  ///< base -> total, degree k
  Cochain euler;           ///< degree k + 1 on the base
  Cochain angular;         ///< degree k on the total
  /// Fiber fundamental cycle, coefficients on the total dim-k cells.
  std::vector<std::int64_t> fiber_cycle;
  Diagonal base_diagonal;
  Diagonal total_diagonal;
};

/// S^m with cells "v" and "e<m>".
[[nodiscard]] CWComplex sphere(int m, BaseField ring);
/// T^2 with cells "v", "a", "b", "f" and zero boundary.
[[nodiscard]] CWComplex torus(BaseField ring);

/// Twisted product of a base with one 0-cell and the k-sphere; `twisting`
/// lists tau(s) as (cell, coef) pairs. Euler and angular cochains are solved
/// by transgression, then the model is validated.
[[nodiscard]] SphereBundleModel twisted_product(
    const std::string& name, const CWComplex& base, int k,
    const std::map<std::string, std::vector<std::pair<std::string, std::int64_t>>>& twisting);

/// base_name: "S<m>" or "T2".
[[nodiscard]] SphereBundleModel product_bundle(const std::string& base_name, int k, BaseField ring);
[[nodiscard]] SphereBundleModel hopf_s1(BaseField ring);
[[nodiscard]] SphereBundleModel hopf_s3(BaseField ring);
[[nodiscard]] SphereBundleModel unit_tangent_s2(BaseField ring);

/// "product:<base>:<k>", "hopf_s1", "hopf_s3", "unit_tangent_s2" or
/// "custom:<path>" (the file fixes its own ring).
[[nodiscard]] SphereBundleModel build_model(const std::string& kind, BaseField ring);

struct Transgression {
  Cochain euler;
  Cochain angular;
};

/// Solves d w = rho^* y with w(fiber cycle) = 1 for an angular cochain w and
/// a base cochain y. `variant` adds that multiple of every free direction to
/// the particular solution. Throws Error when no solution exists.
[[nodiscard]] Transgression euler_from_transgression(const SphereBundleModel& m, std::int64_t variant = 0);

/// Checks every model invariant; throws naming the failing identity.
void validate_model(const SphereBundleModel& m);

/// Chain-level cap by the Euler cochain on the base, degree -k-1.
[[nodiscard]] GradedMap euler_cap(const SphereBundleModel& m);

struct CPsiResult {
  /// Cone of the Euler cap: "s:x" in dim(x) and "t:y" in dim(y) + k.
  CWComplex cone;
  /// Degree-0 map from the cone to the total space.
  GradedMap map;
  bool quasi_iso = false;
};

/// The map (x, y) -> psi ^ rho_!(x) + rho_!(y). Throws NotAChainMap if the
/// model's cap products do not assemble to a chain map.
[[nodiscard]] CPsiResult build_CPsi(const SphereBundleModel& m);

struct ExactnessNode {
  std::string node;  ///< "H(V)", "H(N)" or "H(N)'" (target of the Euler cap)
  int dim = 0;
  bool exact = true;
};

struct GysinReport {
  std::vector<HomologyGroup> base_homology;
  std::vector<HomologyGroup> total_homology;
  std::vector<ExactnessNode> nodes;
  bool exact = true;
};

/// Exactness of H(V) -> H(N) -> H(N)[-k-1] -> H(V)[-1] at every node and
/// dimension, by comparing image and kernel lattices of cycles.
[[nodiscard]] GysinReport gysin_exactness(const SphereBundleModel& m);

/// Exactness of A -f-> B -g-> C at dimension `dim` of B.
[[nodiscard]] bool exact_at(const GradedMap& f, const GradedMap& g, int dim);

/// Same model with coefficients reduced mod 2.
[[nodiscard]] SphereBundleModel reduce_mod2(const SphereBundleModel& m);

void write_bundle_model(std::ostream& os, const SphereBundleModel& m);
[[nodiscard]] SphereBundleModel read_bundle_model(std::istream& is);
[[nodiscard]] SphereBundleModel load_bundle_model(const std::string& path);

}  // namespace novikov::classical

#endif  // NOVIKOV_CLASSICAL_GYSIN_HPP
