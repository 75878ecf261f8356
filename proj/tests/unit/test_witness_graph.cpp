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

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "catch_amalgamated.hpp"
#include "stabctx/witness_graph.hpp"

using namespace stabctx;

namespace {

ExclusivityGraph triangle_plus_tail() {
  // 0-1-2 triangle, 2-3 tail.
  return ExclusivityGraph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}, {{0, 1, 2}, {3}});
}

}  // namespace

TEST_CASE("qubit graph") {
  for (const auto& r : PhaseSpace::get(2).facets()) {
    const ExclusivityGraph g = build_graph(r);
    CHECK(g.vertex_count() == 30);
    CHECK(g.partition().size() == 9);
    CHECK(g.p() == 2);
    REQUIRE(g.facet());
    CHECK(*g.facet() == r);
    // Adjacency is orthogonality of the underlying projectors.
    const auto& projs = g.projectors();
    for (std::size_t u = 0; u < 30; ++u) {
      CHECK_FALSE(g.adjacent(u, u));
      for (std::size_t v = u + 1; v < 30; ++v) {
        const Complex overlap = state_vector(projs[u], 2).dot(state_vector(projs[v], 2));
        CHECK(g.adjacent(u, v) == (std::norm(overlap) < 1e-7));
        CHECK(g.adjacent(u, v) == g.adjacent(v, u));
      }
    }
  }
  CHECK(build_graph(PhaseSpace::get(2).facets().front(), Backend::Symbolic)
            .same_structure(build_graph(PhaseSpace::get(2).facets().front(), Backend::Numeric)));
}

TEST_CASE("qutrit graph: counts, cliques and backend agreement") {
  for (const auto& r : PhaseSpace::get(3).facets()) {
    const ExclusivityGraph sym = build_graph(r, Backend::Symbolic);
    const ExclusivityGraph num = build_graph(r, Backend::Numeric);
    CHECK(sym.vertex_count() == 240);
    CHECK(sym.partition().size() == 28);
    CHECK(sym.same_structure(num));
    CHECK(sym.edge_count() == num.edge_count());
    for (const auto& cls : sym.partition())
      for (std::size_t a : cls)
        for (std::size_t b : cls)
          if (a != b) CHECK(sym.adjacent(a, b));
  }
  CHECK_NOTHROW(build_graph(PhaseSpace::get(3).facets().front(), Backend::Both));
}

TEST_CASE("edge count and degree multiset are the same on every facet") {
  for (std::uint32_t p : {2u, 3u}) {
    const auto& facets = PhaseSpace::get(p).facets();
    const ExclusivityGraph first = build_graph(facets.front());
    auto degrees = first.degree_sequence();
    std::sort(degrees.begin(), degrees.end());
    for (const auto& r : facets) {
      const ExclusivityGraph g = build_graph(r);
      auto d = g.degree_sequence();
      std::sort(d.begin(), d.end());
      CHECK(g.edge_count() == first.edge_count());
      CHECK(d == degrees);
    }
  }
}

TEST_CASE("witness operator") {
  for (std::uint32_t p : {2u, 3u}) {
    const double expected_trace = (double(p) * p * p * p - 1) * p;
    for (const auto& r : PhaseSpace::get(p).facets()) {
      const WitnessOperator w = sigma_operator(r);
      CHECK(w.residual < 1e-8);
      CHECK(w.facet == r);
      CHECK(std::abs(w.sigma.trace().real() - expected_trace) < 1e-8);
      CHECK((w.sigma - sigma_closed_form(r)).norm() < 1e-8);
      Eigen::SelfAdjointEigenSolver<CMatrix> sigma_es(w.sigma);
      Eigen::SelfAdjointEigenSolver<CMatrix> a_es(a_operator(r));
      const double p3 = double(p) * p * p;
      CHECK(sigma_es.eigenvalues().minCoeff() > p3 - a_es.eigenvalues().maxCoeff() - 1e-9);
      CHECK(sigma_es.eigenvalues().maxCoeff() < p3 - a_es.eigenvalues().minCoeff() + 1e-9);
    }
  }
  CHECK(std::abs(sigma_operator(PhaseSpace::get(2).facets().front()).sigma.trace().real() - 30) < 1e-9);
  CHECK(std::abs(sigma_operator(PhaseSpace::get(3).facets().front()).sigma.trace().real() - 240) < 1e-9);
}

TEST_CASE("DIMACS export") {
  CHECK(export_dimacs(triangle_plus_tail()) == "p edge 4 4\ne 1 2\ne 1 3\ne 2 3\ne 3 4\n");

  const ExclusivityGraph g = build_graph(PhaseSpace::get(2).facets().front());
  const std::string text = export_dimacs(g);
  CHECK(text.rfind("p edge 30 " + std::to_string(g.edge_count()) + "\n", 0) == 0);
  std::size_t degree_sum = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) degree_sum += g.degree(v);
  CHECK(degree_sum == 2 * g.edge_count());
  for (const auto& [u, v] : g.edges()) CHECK(u < v);
}

TEST_CASE("DIMACS and JSON round trips") {
  for (std::uint32_t p : {2u, 3u}) {
    const ExclusivityGraph g = build_graph(PhaseSpace::get(p).facets().back());
    const ExclusivityGraph from_dimacs = import_dimacs(export_dimacs(g), g.partition());
    CHECK(from_dimacs.same_structure(g));
    CHECK(from_dimacs.partition() == g.partition());

    const ExclusivityGraph from_json = import_json(export_json(g));
    CHECK(from_json.same_structure(g));
    CHECK(from_json.partition() == g.partition());
    CHECK(from_json.p() == p);
    REQUIRE(from_json.facet());
    CHECK(*from_json.facet() == *g.facet());
    CHECK(from_json.projectors() == g.projectors());
    CHECK(export_json(from_json) == export_json(g));
  }
}

TEST_CASE("JSON export of a bare graph") {
  CHECK(export_json(triangle_plus_tail()) ==
        R"({"edges":[[0,1],[0,2],[1,2],[2,3]],"facet":null,"p":0,"partition":[[0,1,2],[3]],)"
        R"("vertices":[{"class":0,"id":0},{"class":0,"id":1},{"class":0,"id":2},{"class":1,"id":3}]})"
        "\n");
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(ExclusivityGraph(2, {{0, 0}}, {{0}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(ExclusivityGraph(2, {{0, 2}}, {{0}, {1}}), std::invalid_argument);
  CHECK_THROWS_AS(ExclusivityGraph(3, {{0, 1}}, {{0, 1}}), std::invalid_argument);        // 2 uncovered
  CHECK_THROWS_AS(ExclusivityGraph(3, {{0, 1}}, {{0, 1}, {1, 2}}), std::invalid_argument);  // overlap
  CHECK_THROWS_AS(ExclusivityGraph(3, {{0, 1}}, {{0, 1, 2}}), std::invalid_argument);     // not a clique
}

TEST_CASE("DIMACS import errors") {
  CHECK_THROWS_AS(import_dimacs("e 1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(import_dimacs("p edge 2 1\ne 1 3\n"), std::invalid_argument);
  CHECK_THROWS_AS(import_dimacs("p edge 2 2\ne 1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(import_dimacs("p edge 2 1\nx 1 2\n"), std::invalid_argument);
  CHECK_NOTHROW(import_dimacs("c comment\np edge 2 1\ne 2 1\n"));
}

TEST_CASE("greedy clique partition covers with cliques") {
  const ExclusivityGraph g = build_graph(PhaseSpace::get(3).facets().front());
  const Partition part = greedy_clique_partition(g.vertex_count(), g.edges());
  CHECK_NOTHROW(ExclusivityGraph(g.vertex_count(), g.edges(), part));
  const ExclusivityGraph imported = import_dimacs(export_dimacs(g));
  CHECK(imported.same_structure(g));
}

TEST_CASE("induced subgraph") {
  const ExclusivityGraph g = triangle_plus_tail();
  const std::vector<std::size_t> keep{1, 2, 3};
  const ExclusivityGraph sub = g.induced_subgraph(keep);
  CHECK(sub.vertex_count() == 3);
  CHECK(sub.edge_count() == 2);
  CHECK(sub.adjacent(0, 1));
  CHECK(sub.adjacent(1, 2));
  CHECK_FALSE(sub.adjacent(0, 2));
  CHECK(sub.partition().size() == 2);

  const ExclusivityGraph big = build_graph(PhaseSpace::get(2).facets().front());
  const std::vector<std::size_t> ids{0, 5, 9, 29};
  const ExclusivityGraph s2 = big.induced_subgraph(ids);
  CHECK(s2.projectors().size() == 4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) CHECK(s2.adjacent(a, b) == big.adjacent(ids[a], ids[b]));
}

TEST_CASE("backend names") {
  CHECK(parse_backend("symbolic") == Backend::Symbolic);
  CHECK(parse_backend("numeric") == Backend::Numeric);
  CHECK(parse_backend("both") == Backend::Both);
  CHECK(to_string(Backend::Both) == "both");
  CHECK_THROWS_AS(parse_backend("exact"), std::invalid_argument);
}
