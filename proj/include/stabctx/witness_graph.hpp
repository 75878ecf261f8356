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
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabctx/bitset.hpp"
#include "stabctx/mub_phase.hpp"
#include "stabctx/stab2.hpp"

namespace stabctx {

enum class Backend { Symbolic, Numeric, Both };

Backend parse_backend(const std::string& name);
std::string to_string(Backend b);

/// Symbolic and numeric orthogonality disagree; what() lists the pairs.
class BackendMismatch : public std::runtime_error {
 public:
  BackendMismatch(const std::string& what, std::vector<std::pair<std::size_t, std::size_t>> pairs)
      : std::runtime_error(what), pairs_(std::move(pairs)) {}
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

 private:
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

using Edge = std::pair<std::size_t, std::size_t>;
using Partition = std::vector<std::vector<std::size_t>>;

/// Undirected graph whose vertices are partitioned into cliques. Vertices are
/// adjacent iff the corresponding projectors are orthogonal.
class ExclusivityGraph {
 public:
  /// Throws std::invalid_argument on self-loops, out-of-range ids, a partition
  /// that is not a cover by disjoint cliques, or a projector list of the wrong size.
  ExclusivityGraph(std::size_t vertex_count, const std::vector<Edge>& edges, Partition partition,
                   std::uint32_t p = 0, std::optional<FacetVector> facet = std::nullopt,
                   std::vector<StabProjector> projectors = {});

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  bool adjacent(std::size_t u, std::size_t v) const { return adjacency_[u].test(v); }
  const Bitset& neighbors(std::size_t v) const { return adjacency_[v]; }
  std::size_t degree(std::size_t v) const { return adjacency_[v].count(); }

  const Partition& partition() const { return partition_; }
  std::size_t class_of(std::size_t v) const { return class_of_[v]; }

  /// Sorted (u < v) edge list.
  std::vector<Edge> edges() const;
  std::vector<std::size_t> degree_sequence() const;

  std::uint32_t p() const { return p_; }
  const std::optional<FacetVector>& facet() const { return facet_; }
  /// Empty for graphs imported without vertex payloads.
  const std::vector<StabProjector>& projectors() const { return projectors_; }

  /// Subgraph on `vertices` (kept in the given order), with the partition
  /// restricted and empty classes dropped.
  ExclusivityGraph induced_subgraph(std::span<const std::size_t> vertices) const;

  bool same_structure(const ExclusivityGraph& other) const;

 private:
  std::vector<Bitset> adjacency_;
  std::size_t edge_count_ = 0;
  Partition partition_;
  std::vector<std::size_t> class_of_;
  std::uint32_t p_ = 0;
  std::optional<FacetVector> facet_;
  std::vector<StabProjector> projectors_;
};

/// Witness-set graph for facet r. The basis partition has p^3 + 1 classes.
/// p = 2 always uses the numeric backend. Backend::Both builds both adjacency
/// tables and throws BackendMismatch if they differ.
ExclusivityGraph build_graph(const FacetVector& r, Backend backend = Backend::Symbolic);

struct WitnessOperator {
  FacetVector facet;
  CMatrix sigma;
  /// Frobenius distance between the projector sum and (p^3 I - A^r) (x) I.
  double residual = 0.0;
};

/// Sum of the witness-set projectors, checked against the closed form. Throws
/// std::runtime_error when the residual exceeds `tol`.
WitnessOperator sigma_operator(const FacetVector& r, double tol = 1e-8);

/// (p^3 I - A^r) (x) I.
CMatrix sigma_closed_form(const FacetVector& r);

/// `p edge N M` followed by 1-indexed `e u v` lines, u < v, sorted.
std::string export_dimacs(const ExclusivityGraph& g);
/// {"p", "facet", "vertices", "edges", "partition"}; vertex ids are 0-indexed.
std::string export_json(const ExclusivityGraph& g);

/// Parses a DIMACS edge file. Without a partition, vertices are grouped
/// greedily into cliques in id order.
ExclusivityGraph import_dimacs(const std::string& text, std::optional<Partition> partition = {});
ExclusivityGraph import_json(const std::string& text);
/// Reads {"partition": [[...], ...]} (0-indexed).
Partition parse_partition_json(const std::string& text);

/// Greedy cover by cliques in vertex order.
Partition greedy_clique_partition(std::size_t vertex_count, const std::vector<Edge>& edges);

StabProjector projector_from_json(const nlohmann::json& j, std::uint32_t p);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace stabctx
