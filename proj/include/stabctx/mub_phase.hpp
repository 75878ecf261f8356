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
#include <vector>

#include "stabctx/ffield.hpp"
#include "stabctx/weyl.hpp"

namespace stabctx {

/// Hermitian p x p operator (facet operators, projectors).
using HermitianOperator = CMatrix;
/// Unit-trace Hermitian matrix. Positivity is not assumed.
using DensityMatrix = CMatrix;

/// Tolerance used by polytope membership tests.
inline constexpr double kFacetTol = 1e-8;

/// Eigenbasis label: `basis` in 1..p+1 selects the operator from the list
/// D_{0,1}, D_{1,0}, D_{1,1}, ..., D_{1,p-1}; `level` q selects eigenvalue omega^q.
struct MubIndex {
  std::uint32_t basis;
  std::uint32_t level;

  bool operator==(const MubIndex&) const = default;
};

enum class FacetKind { Generic, Simulable };

/// r in Z_p^{p+1}; entry j-1 is the excluded level of basis j.
struct FacetVector {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> r;
  FacetKind kind = FacetKind::Generic;

  std::uint32_t level(std::uint32_t basis) const { return r.at(basis - 1); }
  bool operator==(const FacetVector& o) const { return p == o.p && r == o.r; }
};

std::string to_string(const FacetVector& r);

/// The displacement operator whose eigenbasis is MUB number `basis`.
CMatrix mub_operator(std::uint32_t basis, std::uint32_t p);

/// Simulable facets: all of Z_2^3 for p = 2, {x a + z b} for odd p with
/// a = [1, 0, 1, ..., p-1], b = -[0, 1, ..., 1]. Ordered by (x, z) for odd p
/// and by r read as a base-2 number (first entry most significant) for p = 2.
std::vector<FacetVector> facet_family(std::uint32_t p);

/// Every r in Z_p^{p+1}, in base-p counting order.
std::vector<FacetVector> all_generic_facets(std::uint32_t p);

/// Result of evaluating a family of facet inequalities on an operator.
struct FacetCheck {
  bool inside = false;
  std::size_t min_facet = 0;
  double min_value = 0.0;
  std::vector<double> values;
};

/// Single-qudit stabilizer geometry for one prime p. Immutable once built;
/// obtain shared instances through PhaseSpace::get.
class PhaseSpace {
 public:
  explicit PhaseSpace(std::uint32_t p);

  /// Cached instance per p (thread-safe).
  static const PhaseSpace& get(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  const HermitianOperator& mub_projector(MubIndex m) const;
  /// Eigenvector with its first nonzero amplitude real and positive.
  const CVector& mub_vector(MubIndex m) const;

  /// A^r = -I + sum_j Pi_j^{r_j}.
  HermitianOperator a_operator(const FacetVector& r) const;

  const std::vector<FacetVector>& facets() const { return facets_; }
  const std::vector<HermitianOperator>& facet_operators() const { return facet_ops_; }
  /// Index of `r` in facets(); throws std::out_of_range if absent.
  std::size_t facet_index(const FacetVector& r) const;

  /// Tr(rho A^r) >= -tol for all simulable facets.
  FacetCheck in_psim(const DensityMatrix& rho, double tol = kFacetTol) const;
  /// Tr(rho A^q) >= -tol for all q in Z_p^{p+1}.
  bool in_pstab(const DensityMatrix& rho, double tol = kFacetTol) const;
  /// As in_pstab, reporting the minimising q as an index into
  /// all_generic_facets(p). `values` is left empty (p^{p+1} entries).
  FacetCheck pstab_check(const DensityMatrix& rho, double tol = kFacetTol) const;

  /// Raw Tr(rho A^u) for a simulable facet u; odd p only.
  double wigner(const DensityMatrix& rho, const FacetVector& u) const;

 private:
  std::uint32_t p_;
  std::vector<std::vector<HermitianOperator>> projectors_;  // [basis-1][level]
  std::vector<std::vector<CVector>> vectors_;
  std::vector<FacetVector> facets_;
  std::vector<HermitianOperator> facet_ops_;
};

/// Free-function forms over the cached PhaseSpace.
HermitianOperator mub_projector(MubIndex m, std::uint32_t p);
HermitianOperator a_operator(const FacetVector& r);
FacetCheck in_psim(const DensityMatrix& rho);
bool in_pstab(const DensityMatrix& rho);
double wigner(const DensityMatrix& rho, const FacetVector& u);

/// Projector onto the -1 eigenvector of A^0 (odd p). Throws DomainError when
/// the -1 eigenspace is not one-dimensional, reporting its multiplicity.
DensityMatrix strange_state(std::uint32_t p);

/// Qubit state with Bloch vector antiparallel to the facet direction of
/// A^{(0,0,0)}; attains Tr(A rho) = (1 - sqrt 3) / 2.
DensityMatrix t_state();

/// Projector onto a lowest eigenvector of A^r; attains Tr(A^r rho) = lambda_min(A^r).
DensityMatrix facet_min_state(const FacetVector& r);

/// I / p.
DensityMatrix maximally_mixed(std::uint32_t p);

/// Throws std::invalid_argument unless rho is dim x dim, Hermitian and unit trace.
void validate_unit_trace_hermitian(const CMatrix& rho, std::size_t dim, double tol = kNumericTol);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& h);

}  // namespace stabctx
