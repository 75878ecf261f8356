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

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "catch_amalgamated.hpp"
#include "stabctx/mis.hpp"

using namespace stabctx;

namespace {

ExclusivityGraph make_graph(std::size_t n, const std::vector<Edge>& edges) {
  return ExclusivityGraph(n, edges, greedy_clique_partition(n, edges));
}

// Subset enumeration over an explicit edge list.
std::size_t oracle_alpha(std::size_t n, const std::vector<Edge>& edges) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (const auto& [u, v] : edges)
      if ((mask >> u & 1u) && (mask >> v & 1u)) ok = false;
    if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

std::vector<Edge> cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return e;
}

std::vector<Edge> petersen() {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  return e;
}

}  // namespace

TEST_CASE("small graphs") {
  const auto c5 = make_graph(5, cycle(5));
  CHECK(max_independent_set(c5).size() == 2);
  CHECK(brute_force_independent_set(c5).size() == 2);

  const auto pet = make_graph(10, petersen());
  const IndependentSet s = max_independent_set(pet);
  CHECK(s.size() == 4);
  CHECK(s.exact);
  CHECK(is_independent(pet, s.vertices));

  std::vector<Edge> k6;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) k6.emplace_back(i, j);
  CHECK(max_independent_set(make_graph(6, k6)).size() == 1);
  CHECK(max_independent_set(make_graph(6, {})).size() == 6);
}

TEST_CASE("random graphs agree with subset enumeration") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 4 + t % 11;
    const double density = 0.15 + 0.1 * (t % 7);
    std::bernoulli_distribution coin(density);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng)) edges.emplace_back(i, j);
    const auto g = make_graph(n, edges);
    const std::size_t expected = oracle_alpha(n, edges);
    const IndependentSet bb = max_independent_set(g);
    CHECK(bb.size() == expected);
    CHECK(is_independent(g, bb.vertices));
    CHECK(brute_force_independent_set(g).size() == expected);
    CHECK(exhaustive_by_class(g).size() == expected);
  }
}

TEST_CASE("is_independent rejects repeats and edges") {
  const auto c5 = make_graph(5, cycle(5));
  CHECK(is_independent(c5, {0, 2}));
  CHECK_FALSE(is_independent(c5, {0, 1}));
  CHECK_FALSE(is_independent(c5, {0, 0}));
  CHECK(is_independent(c5, {}));
}

TEST_CASE("witness-set independence numbers") {
  for (const auto& r : PhaseSpace::get(2).facets()) {
    const auto g = build_graph(r);
    const auto s = max_independent_set(g);
    CHECK(s.size() == 8);
    CHECK(s.exact);
    CHECK(is_independent(g, s.vertices));
  }
  const auto g3 = build_graph(PhaseSpace::get(3).facets().front());
  const auto s3 = max_independent_set(g3);
  CHECK(s3.size() == 27);
  CHECK(s3.exact);
  CHECK(is_independent(g3, s3.vertices));
}

TEST_CASE("phase-space independent sets") {
  const std::uint32_t p = 3;
  const auto& facets = PhaseSpace::get(p).facets();
  const FacetVector& r = facets.front();
  const auto g = build_graph(r);
  for (std::size_t ui = 1; ui < facets.size(); ++ui) {
    for (std::size_t vi = 0; vi < facets.size(); vi += 4) {
      const auto s = phase_space_independent_set(r, facets[ui], facets[vi]);
      CHECK(s.size() == 27);
      CHECK(is_independent(g, s.vertices));
      REQUIRE(s.phase_point);
      CHECK(s.phase_point->first == ui);
      CHECK(s.phase_point->second == vi);
    }
  }
  CHECK_THROWS_AS(phase_space_independent_set(r, r, facets[1]), DomainError);
  const auto& q = PhaseSpace::get(2).facets();
  CHECK_THROWS_AS(phase_space_independent_set(q[0], q[1], q[2]), DomainError);
}

TEST_CASE("phase-space values sum to p^3 - Tr(A^r A^u)") {
  const std::uint32_t p = 3;
  const auto& ps = PhaseSpace::get(p);
  const auto& facets = ps.facets();
  const FacetVector& r = facets[2];
  for (const auto& u : facets) {
    const auto vals = phase_space_values(r, u, facets[5]);
    double sum = 0;
    for (double w : vals) sum += w;
    const double overlap = (ps.a_operator(r) * ps.a_operator(u)).trace().real();
    CHECK(std::abs(sum - (27.0 - overlap)) < 1e-8);
    // Tr(A^r)^2 = p, so u = r leaves p^3 - p points.
    if (u == r) CHECK(phase_space_count(r, u, facets[5]) == 24);
  }
}

TEST_CASE("overlaps follow from the phase-space expansion") {
  // Tr(P Q) = p^-2 sum_{u,v} W_P(u,v) W_Q(u,v) with W_P(u,v) = <A^u (x) A^v>_P / p^2.
  const std::uint32_t p = 3;
  const auto& ps = PhaseSpace::get(p);
  const auto projs = witness_set(ps.facets().front());
  std::vector<CVector> vecs;
  for (std::size_t i = 0; i < projs.size(); i += 37) vecs.push_back(state_vector(projs[i], p));
  for (std::size_t a = 0; a < vecs.size(); ++a)
    for (std::size_t b = 0; b < vecs.size(); ++b) {
      double sum = 0;
      for (const auto& u : ps.facets())
        for (const auto& v : ps.facets()) {
          const CMatrix point = Eigen::kroneckerProduct(ps.a_operator(u), ps.a_operator(v)).eval();
          sum += vecs[a].dot(point * vecs[a]).real() * vecs[b].dot(point * vecs[b]).real();
        }
      CHECK(std::abs(sum / (p * p) - std::norm(vecs[a].dot(vecs[b]))) < 1e-9);
    }
}

TEST_CASE("timeout reports a lower bound") {
  const auto g = build_graph(PhaseSpace::get(3).facets().front());
  MisOptions opt;
  opt.timeout = std::chrono::milliseconds(0);
  const auto s = max_independent_set(g, opt);
  CHECK(is_independent(g, s.vertices));
  if (!s.exact) CHECK(s.size() <= 27);
}

TEST_CASE("sandwich certificates") {
  const auto g3 = build_graph(PhaseSpace::get(3).facets().front());
  const auto c3 = sandwich_certificate(g3, 27);
  CHECK(c3.clique_cover_upper == 28);
  CHECK(std::abs(c3.quantum_value_lower - 28.0) < 1e-8);
  CHECK(c3.certified);
  CHECK(c3.theta_lower == c3.theta_upper);

  const auto g2 = build_graph(PhaseSpace::get(2).facets().front());
  const auto c2 = sandwich_certificate(g2, 8);
  CHECK(c2.clique_cover_upper == 9);
  CHECK(std::abs(c2.quantum_value_lower - (8 + (std::sqrt(3.0) - 1) / 2)) < 1e-8);
  CHECK_FALSE(c2.certified);
  CHECK(c2.theta_lower < c2.theta_upper);

  const auto j = to_json(c3);
  CHECK(j["certified"] == true);
  CHECK(j["alpha"] == 27);
  CHECK(j["theta"].size() == 2);
  CHECK_THROWS_AS(sandwich_certificate(make_graph(5, cycle(5)), 2), std::invalid_argument);
}

TEST_CASE("independent set JSON") {
  IndependentSet s;
  s.vertices = {1, 4};
  CHECK(to_json(s).dump() == R"({"exact":true,"size":2,"vertices":[1,4]})");
  s.phase_point = std::make_pair(std::size_t{1}, std::size_t{2});
  CHECK(to_json(s)["phase_point"].dump() == "[1,2]");
}
