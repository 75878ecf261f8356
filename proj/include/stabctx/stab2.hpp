// Copyright 2026 The stabctx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "stabctx/ffield.hpp"
#include "stabctx/mub_phase.hpp"
#include "stabctx/weyl.hpp"

namespace stabctx {

/// Pi_basis^level (x) |k><k|.
struct SepProjector {
  std::uint32_t basis;
  std::uint32_t level;
  std::uint32_t k;

  bool operator==(const SepProjector&) const = default;
};

/// |x, z, F_b C><x, z, F_b C| stored in coset coordinates.
struct EntProjector {
  CosetLabel b;
  BpElement c;
  Fp x;
  Fp z;

  SympMatrix f() const;
  bool operator==(const EntProjector&) const = default;
};

using StabProjector = std::variant<SepProjector, EntProjector>;

/// Separable cliques are indexed by MUB basis; entangled ones by symplectic matrix.
struct SepBasis {
  std::uint32_t basis;
  bool operator==(const SepBasis&) const = default;
};
struct EntBasis {
  CosetLabel b;
  BpElement c;
  bool operator==(const EntBasis&) const = default;
};
using BasisId = std::variant<SepBasis, EntBasis>;

BasisId basis_of(const StabProjector& proj);

/// Dense index of a basis class: separable bases 0..p, then entangled bases
/// p+1..p^3 in (coset, alpha, gamma) order.
std::size_t basis_index(const BasisId& id, std::uint32_t p);
std::size_t basis_count(std::uint32_t p);

/// Number of projectors in the witness set: p(p^2-1) + p^2 (p^3-p).
std::size_t witness_set_size(std::uint32_t p);

/// All p^2(p^3-p) entangled two-qudit stabilizer projectors, ordered by
/// (coset index, alpha, gamma, x, z).
std::vector<EntProjector> entangled_projectors(std::uint32_t p);

/// The witness set for facet r: separable projectors (basis, level != r_basis, k)
/// in lexicographic order, followed by entangled_projectors(p).
std::vector<StabProjector> witness_set(const FacetVector& r);

/// Correspondence between the MUB labelling (basis, level) and coset labelling
/// U_{F_b}|k>, established by matching projectors numerically (odd p).
class MubCosetMap {
 public:
  struct CosetLevel {
    CosetLabel b;
    std::uint32_t k;
  };

  /// Throws std::logic_error if any projector fails to match uniquely.
  explicit MubCosetMap(std::uint32_t p);
  static const MubCosetMap& get(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  CosetLevel to_coset(MubIndex m) const;
  MubIndex to_mub(const CosetLabel& b, std::uint32_t k) const;
  CosetLabel coset_of_basis(std::uint32_t basis) const;

 private:
  std::uint32_t p_;
  std::vector<std::vector<CosetLevel>> forward_;   // [basis-1][level]
  std::vector<std::vector<MubIndex>> backward_;    // [coset index][k]
};

MubCosetMap mub_coset_map(std::uint32_t p);

/// Separable pair: orthogonal iff the first factors are (same basis, different
/// level) or the computational second factors differ.
bool orth_sep_sep(const SepProjector& a, const SepProjector& b);

/// Entangled pair, from the symplectic data alone. With G = F_a^-1 F_b and
/// (dx, dz) = F_a^-1 (x_b - x_a, z_b - z_a) the states are nonorthogonal iff
///   G = I and (dx, dz) = 0, or
///   tr G != 2, or
///   tr G = 2, G != I and beta_G dz = (1 - alpha_G) dx  (dx = 0 when beta_G = 0).
bool orth_ent_ent(const EntProjector& a, const EntProjector& b);

/// Entangled vs separable. Different cosets are always nonorthogonal (overlap
/// 1/p^2). In the same coset, with the separable state (U_{F_b}|k>)|l> and
/// the entangled one |x, z, F_b C_{alpha,gamma}>, nonorthogonal iff
///   x - b z = k - alpha l   (b finite), or
///   -z = k - alpha l        (b infinite).
bool orth_ent_sep(const EntProjector& e, const SepProjector& s, const MubCosetMap& map);

/// Symbolic decision for any pair (odd p).
bool orthogonal_symbolic(const StabProjector& a, const StabProjector& b, const MubCosetMap& map);

/// Two-qudit state vector of a projector in the basis |a>|b> -> index a*p + b.
CVector state_vector(const StabProjector& proj, std::uint32_t p);

/// Numeric decision: |<a|b>|^2 < tol.
bool orthogonal_numeric(const StabProjector& a, const StabProjector& b, std::uint32_t p,
                        double tol = 1e-7);

/// One JSON record per projector (tag, coordinates, basis id).
nlohmann::json projector_json(const StabProjector& proj, std::uint32_t p);

/// JSON lines dump of a projector list.
std::string projectors_jsonl(const std::vector<StabProjector>& projs, std::uint32_t p);

}  // namespace stabctx
