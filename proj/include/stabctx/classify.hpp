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
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "stabctx/mub_phase.hpp"
#include "stabctx/witness_graph.hpp"

namespace stabctx {

enum class Region { InPstab, BoundRegion, Contextual, NonState };

std::string to_string(Region r);

struct StateClass {
  Region region = Region::InPstab;
  /// Minimum facet value lies in [-tol, 0): reported inside P_SIM but flagged.
  bool boundary_ambiguous = false;
  std::vector<double> facet_values;
  std::size_t min_facet = 0;
  double min_facet_value = 0.0;
  double min_eigenvalue = 0.0;
};

/// Caches Sigma^r (the summed witness projectors) for every simulable facet.
class WitnessEvaluator {
 public:
  explicit WitnessEvaluator(std::uint32_t p);
  static const WitnessEvaluator& get(std::uint32_t p);

  std::uint32_t p() const { return p_; }
  const CMatrix& sigma(std::size_t facet) const { return sigmas_.at(facet); }

  /// Tr[Sigma^r (rho (x) sigma)].
  double witness_value(std::size_t facet, const DensityMatrix& rho, const DensityMatrix& sigma) const;

 private:
  std::uint32_t p_;
  std::vector<CMatrix> sigmas_;
};

/// Tr[Sigma^r (rho (x) sigma)] = p^3 - Tr(A^r rho) for unit-trace sigma.
double witness_value(const FacetVector& r, const DensityMatrix& rho, const DensityMatrix& sigma);

/// NonState if rho has an eigenvalue below -tol; otherwise Contextual if some
/// facet value is below -tol; otherwise InPstab or BoundRegion.
StateClass classify_state(const DensityMatrix& rho, double tol = kFacetTol);

nlohmann::json to_json(const StateClass& c);

struct SliceSpec {
  DensityMatrix base;
  CMatrix dir_s;
  CMatrix dir_t;
  std::size_t grid = 101;
  double s_min = -1.0, s_max = 1.0;
  double t_min = -1.0, t_max = 1.0;
};

struct SlicePoint {
  double s = 0.0, t = 0.0;
  Region region = Region::InPstab;
  double min_facet = 0.0;
  double min_eig = 0.0;
};

/// The qutrit slice through I/3 spanned by the traceless parts of the strange
/// state and of the A^{r_1} minimum-eigenvalue state (Gram-Schmidt against
/// the first direction), normalised to unit Hilbert-Schmidt length.
SliceSpec default_slice(std::uint32_t p, std::size_t grid = 101);

/// Classifies base + s dir_s + t dir_t on a grid x grid lattice, row-major in
/// s then t, independent of `threads`. Throws std::invalid_argument for
/// non-Hermitian or traced directions.
std::vector<SlicePoint> slice_scan(const SliceSpec& spec, double tol = kFacetTol, unsigned threads = 1);

/// `s,t,class,min_facet,min_eig` with 12 significant digits.
std::string slice_csv(const std::vector<SlicePoint>& points);

/// Hilbert-Schmidt random density matrix (normalised Wishart G G^dagger).
DensityMatrix random_density_matrix(std::uint32_t dim, std::mt19937_64& rng);
DensityMatrix random_pure_state(std::uint32_t dim, std::mt19937_64& rng);

struct BijectionReport {
  std::uint32_t p = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t checks = 0;
  std::size_t sign_mismatches = 0;
  double max_identity_residual = 0.0;
  /// max |witness(rho, sigma) - witness(rho, I/p)|
  double max_sigma_dependence = 0.0;
  bool passed = false;
};

/// For `trials` random (rho, sigma) pairs and every facet, compares
/// sign(Tr[Sigma^r (rho (x) sigma)] - p^3) with sign(-Tr(A^r rho)).
/// `witness_override` replaces the witness facet for every comparison
/// (negative control).
BijectionReport verify_bijection(std::uint32_t p, std::size_t trials, std::uint64_t seed,
                                 const std::optional<FacetVector>& witness_override = {});

nlohmann::json to_json(const BijectionReport& r);

}  // namespace stabctx
