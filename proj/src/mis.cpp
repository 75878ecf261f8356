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

#include "stabctx/mis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/KroneckerProduct>

namespace stabctx {

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const ExclusivityGraph& g, const MisOptions& options) : g_(g) {
    const std::size_t n = g.vertex_count();
    non_neighbors_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
      Bitset nn(n);
      nn.set_all();
      nn.subtract(g.neighbors(v));
      nn.reset(v);
      non_neighbors_.push_back(std::move(nn));
    }
    for (const auto& cls : g.partition()) {
      Bitset mask(n);
      for (std::size_t v : cls) mask.set(v);
      class_masks_.push_back(std::move(mask));
    }
    if (options.timeout) deadline_ = std::chrono::steady_clock::now() + *options.timeout;
  }

  IndependentSet run() {
    Bitset all(g_.vertex_count());
    all.set_all();
    seed_greedy(all);
    std::vector<std::size_t> chosen;
    try {
      search(all, chosen);
    } catch (const Timeout&) {
      exact_ = false;
    }
    IndependentSet out;
    out.vertices = best_;
    std::sort(out.vertices.begin(), out.vertices.end());
    out.exact = exact_;
    out.nodes = nodes_;
    return out;
  }

 private:
  struct Timeout {};

  void seed_greedy(Bitset candidates) {
    std::vector<std::size_t> chosen;
    for (const auto& mask : class_masks_) {
      std::size_t pick = g_.vertex_count();
      Bitset in_class = candidates;
      in_class &= mask;
      in_class.for_each([&](std::size_t v) { pick = std::min(pick, v); });
      if (pick == g_.vertex_count()) continue;
      chosen.push_back(pick);
      candidates &= non_neighbors_[pick];
    }
    best_ = chosen;
  }

  void search(const Bitset& candidates, std::vector<std::size_t>& chosen) {
    if (deadline_ && (++nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > *deadline_) {
      throw Timeout{};
    }
    if (!deadline_) ++nodes_;

    std::size_t live = 0;
    std::size_t branch_class = class_masks_.size();
    std::size_t branch_count = std::numeric_limits<std::size_t>::max();
    for (std::size_t c = 0; c < class_masks_.size(); ++c) {
      const std::size_t cnt = candidates.count_and(class_masks_[c]);
      if (cnt == 0) continue;
      ++live;
      if (cnt < branch_count) {
        branch_count = cnt;
        branch_class = c;
      }
    }
    if (chosen.size() + live <= best_.size()) return;
    if (live == 0) {
      best_ = chosen;
      return;
    }

    Bitset in_class = candidates;
    in_class &= class_masks_[branch_class];
    std::vector<std::size_t> options;
    in_class.for_each([&](std::size_t v) { options.push_back(v); });
    for (std::size_t v : options) {
      Bitset next = candidates;
      next &= non_neighbors_[v];
      next.subtract(class_masks_[branch_class]);
      chosen.push_back(v);
      search(next, chosen);
      chosen.pop_back();
    }
    Bitset skip = candidates;
    skip.subtract(class_masks_[branch_class]);
    search(skip, chosen);
  }

  const ExclusivityGraph& g_;
  std::vector<Bitset> non_neighbors_;
  std::vector<Bitset> class_masks_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool exact_ = true;
};

}  // namespace

IndependentSet max_independent_set(const ExclusivityGraph& g, const MisOptions& options) {
  return BranchAndBound(g, options).run();
}

IndependentSet brute_force_independent_set(const ExclusivityGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n > 25) throw std::invalid_argument("brute force limited to 25 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (g.adjacent(u, v)) adj[u] |= std::uint32_t{1} << v;

  const std::uint32_t total = std::uint32_t{1} << n;
  std::vector<std::uint8_t> independent(total, 0);
  independent[0] = 1;
  std::uint32_t best_mask = 0;
  int best_size = 0;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int low = std::countr_zero(mask);
    const std::uint32_t rest = mask & (mask - 1);
    if (independent[rest] && (adj[low] & rest) == 0) {
      independent[mask] = 1;
      const int size = std::popcount(mask);
      if (size > best_size) {
        best_size = size;
        best_mask = mask;
      }
    }
  }
  IndependentSet out;
  for (std::size_t v = 0; v < n; ++v)
    if ((best_mask >> v) & 1u) out.vertices.push_back(v);
  out.nodes = total;
  return out;
}

IndependentSet exhaustive_by_class(const ExclusivityGraph& g) {
  const auto& part = g.partition();
  std::vector<std::size_t> current, best;
  std::uint64_t nodes = 0;
  auto recurse = [&](auto&& self, std::size_t c) -> void {
    ++nodes;
    if (c == part.size()) {
      if (current.size() > best.size()) best = current;
      return;
    }
    for (std::size_t v : part[c]) {
      bool ok = std::none_of(current.begin(), current.end(),
                             [&](std::size_t u) { return g.adjacent(u, v); });
      if (!ok) continue;
      current.push_back(v);
      self(self, c + 1);
      current.pop_back();
    }
    self(self, c + 1);
  };
  recurse(recurse, 0);
  IndependentSet out;
  out.vertices = best;
  std::sort(out.vertices.begin(), out.vertices.end());
  out.nodes = nodes;
  return out;
}

bool is_independent(const ExclusivityGraph& g, const std::vector<std::size_t>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j] || g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

std::vector<double> phase_space_values(const FacetVector& r, const FacetVector& u,
                                       const FacetVector& v) {
  const std::uint32_t p = r.p;
  if (u.p != p || v.p != p) throw std::invalid_argument("facets from different p");
  const auto& ps = PhaseSpace::get(p);
  const CMatrix point = Eigen::kroneckerProduct(ps.a_operator(u), ps.a_operator(v)).eval();
  std::vector<double> out;
  for (const auto& proj : witness_set(r)) {
    const CVector psi = state_vector(proj, p);
    out.push_back(psi.dot(point * psi).real());
  }
  return out;
}

namespace {

std::vector<std::size_t> unit_points(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double w = values[i];
    if (std::abs(w - 1.0) < 1e-9) {
      out.push_back(i);
    } else if (std::abs(w) > 1e-9) {
      throw std::logic_error("phase-space value " + std::to_string(w) + " is neither 0 nor 1");
    }
  }
  return out;
}

}  // namespace

std::size_t phase_space_count(const FacetVector& r, const FacetVector& u, const FacetVector& v) {
  return unit_points(phase_space_values(r, u, v)).size();
}

IndependentSet phase_space_independent_set(const FacetVector& r, const FacetVector& u,
                                           const FacetVector& v) {
  const std::uint32_t p = r.p;
  if (p == 2) throw DomainError("phase-space construction needs odd p");
  if (u == r) {
    throw DomainError("u = r: the count is p^3 - delta(r - u) = p^3 - p, not p^3");
  }
  const auto& ps = PhaseSpace::get(p);
  IndependentSet out;
  out.vertices = unit_points(phase_space_values(r, u, v));
  out.phase_point = std::make_pair(ps.facet_index(u), ps.facet_index(v));
  return out;
}

SandwichCertificate sandwich_certificate(const ExclusivityGraph& g, std::size_t alpha) {
  if (!g.facet()) throw std::invalid_argument("sandwich certificate needs a witness-set graph");
  const FacetVector& r = *g.facet();
  const std::uint32_t p = r.p;
  SandwichCertificate c;
  c.p = p;
  c.alpha = alpha;
  c.clique_cover_upper = g.partition().size();

  const WitnessOperator sigma = sigma_operator(r);
  const CMatrix rho = Eigen::kroneckerProduct(facet_min_state(r), maximally_mixed(p)).eval();
  c.quantum_value_lower = (sigma.sigma * rho).trace().real();

  const double upper = static_cast<double>(c.clique_cover_upper);
  c.theta_lower = c.alphastar_lower = std::max(c.quantum_value_lower, static_cast<double>(alpha));
  c.theta_upper = c.alphastar_upper = upper;
  c.certified = upper - c.quantum_value_lower < 1e-8;
  if (c.certified) c.theta_lower = c.alphastar_lower = upper;
  return c;
}

nlohmann::json to_json(const IndependentSet& s) {
  nlohmann::json j;
  j["size"] = s.size();
  j["vertices"] = s.vertices;
  j["exact"] = s.exact;
  if (s.phase_point) j["phase_point"] = {s.phase_point->first, s.phase_point->second};
  return j;
}

nlohmann::json to_json(const SandwichCertificate& c) {
  return {{"p", c.p},
          {"alpha", c.alpha},
          {"quantum_value_lower", c.quantum_value_lower},
          {"clique_cover_upper", c.clique_cover_upper},
          {"theta", {c.theta_lower, c.theta_upper}},
          {"alphastar", {c.alphastar_lower, c.alphastar_upper}},
          {"certified", c.certified}};
}

}  // namespace stabctx
