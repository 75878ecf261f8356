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

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stabctx/mub_phase.hpp"
#include "stabctx/witness_graph.hpp"

namespace stabctx {

struct IndependentSet {
  std::vector<std::size_t> vertices;
  /// False when the search stopped early; the set is then only a lower bound.
  bool exact = true;
  /// Facet-family indices (u, v) for sets built from a phase-space point.
  std::optional<std::pair<std::size_t, std::size_t>> phase_point;
  std::uint64_t nodes = 0;

  std::size_t size() const { return vertices.size(); }
};

struct MisOptions {
  std::optional<std::chrono::milliseconds> timeout;
};

/// Exact maximum independent set by branch and bound over the partition
/// classes: at most one vertex per class, branching on the class with the
/// fewest surviving candidates, bound = chosen + classes with a candidate.
IndependentSet max_independent_set(const ExclusivityGraph& g, const MisOptions& options = {});

/// Exhaustive search over all vertex subsets (n <= 25).
IndependentSet brute_force_independent_set(const ExclusivityGraph& g);

/// Exhaustive search over one-or-none choices per partition class.
IndependentSet exhaustive_by_class(const ExclusivityGraph& g);

bool is_independent(const ExclusivityGraph& g, const std::vector<std::size_t>& vertices);

/// W_Pi(u, v) = Tr(Pi A^u (x) A^v) for every member of witness_set(r).
std::vector<double> phase_space_values(const FacetVector& r, const FacetVector& u,
                                       const FacetVector& v);

/// Number of witness projectors with W = 1 at (u, v). Equals
/// p^3 - Tr(A^r A^u), i.e. p^3 - p delta(r - u).
std::size_t phase_space_count(const FacetVector& r, const FacetVector& u, const FacetVector& v);

/// The p^3 witness projectors taking W = 1 at (u, v). Requires odd p and
/// u != r (at u = r the count drops to p^3 - p); throws DomainError otherwise.
IndependentSet phase_space_independent_set(const FacetVector& r, const FacetVector& u,
                                           const FacetVector& v);

struct SandwichCertificate {
  std::uint32_t p = 0;
  std::size_t alpha = 0;
  /// <Sigma> for the lowest eigenstate of A^r tensored with I/p.
  double quantum_value_lower = 0.0;
  std::size_t clique_cover_upper = 0;
  double theta_lower = 0.0, theta_upper = 0.0;
  double alphastar_lower = 0.0, alphastar_upper = 0.0;
  /// theta = alpha* = clique_cover_upper proven (lower meets upper).
  bool certified = false;
};

/// alpha <= <Sigma>_QM <= theta <= alpha* <= clique cover. The clique bound
/// is the number of partition classes.
SandwichCertificate sandwich_certificate(const ExclusivityGraph& g, std::size_t alpha);

nlohmann::json to_json(const IndependentSet& s);
nlohmann::json to_json(const SandwichCertificate& c);

}  // namespace stabctx
