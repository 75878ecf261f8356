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

#include "stabctx/verification.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "stabctx/classify.hpp"
#include "stabctx/mis.hpp"
#include "stabctx/stab2.hpp"
#include "stabctx/witness_graph.hpp"

namespace stabctx {

namespace {

// Pinned acceptance tolerances.
constexpr double kSigmaResidualTol = 1e-8;
constexpr double kQuantumValueTol = 1e-8;
constexpr double kBijectionResidualTol = 1e-8;
constexpr double kQubitBudgetSeconds = 1.0;
constexpr double kQutritBudgetSeconds = 300.0;
constexpr std::size_t kSubgraphTrials = 100;
constexpr std::size_t kSubgraphMaxVertices = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct AlphaSweep {
  bool vertices_ok = true;
  bool classes_ok = true;
  bool alpha_ok = true;
  std::vector<std::size_t> alphas;
};

AlphaSweep alpha_sweep(std::uint32_t p, std::size_t vertices, std::size_t classes, std::size_t alpha,
                       unsigned threads) {
  const auto& facets = PhaseSpace::get(p).facets();
  AlphaSweep out;
  out.alphas.assign(facets.size(), 0);
  std::vector<int> v_ok(facets.size(), 1), c_ok(facets.size(), 1);
  parallel_for(facets.size(), threads, [&](std::size_t f) {
    const ExclusivityGraph g = build_graph(facets[f]);
    v_ok[f] = g.vertex_count() == vertices;
    c_ok[f] = g.partition().size() == classes;
    const IndependentSet s = max_independent_set(g);
    out.alphas[f] = (s.exact && is_independent(g, s.vertices)) ? s.size() : 0;
  });
  for (std::size_t f = 0; f < facets.size(); ++f) {
    out.vertices_ok = out.vertices_ok && v_ok[f];
    out.classes_ok = out.classes_ok && c_ok[f];
    out.alpha_ok = out.alpha_ok && out.alphas[f] == alpha;
  }
  return out;
}

std::string join(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

CriterionResult qubit_graph(const AcceptanceOptions& opt) {
  CriterionResult r{1, "qubit graph: 30 vertices, alpha = 8 on all 8 facets", false, "", 0.0};
  const auto start = Clock::now();
  const AlphaSweep sweep = alpha_sweep(2, 30, 9, 8, opt.threads);
  r.seconds = seconds_since(start);
  r.passed = sweep.vertices_ok && sweep.alpha_ok && PhaseSpace::get(2).facets().size() == 8 &&
             r.seconds < kQubitBudgetSeconds;
  r.detail = "alpha per facet [" + join(sweep.alphas) + "]" + (sweep.vertices_ok ? "" : ", vertex count wrong") +
             (r.seconds < kQubitBudgetSeconds ? "" : ", over time budget");
  return r;
}

CriterionResult qutrit_graph(const AcceptanceOptions& opt) {
  CriterionResult r{2, "qutrit graph: 240 vertices, 28 classes, alpha = 27 on all 9 facets", false, "", 0.0};
  const auto start = Clock::now();
  const AlphaSweep sweep = alpha_sweep(3, 240, 28, 27, opt.threads);
  r.seconds = seconds_since(start);
  r.passed = sweep.vertices_ok && sweep.classes_ok && sweep.alpha_ok &&
             PhaseSpace::get(3).facets().size() == 9 && r.seconds < kQutritBudgetSeconds;
  r.detail = "alpha per facet [" + join(sweep.alphas) + "]" + (sweep.vertices_ok ? "" : ", vertex count wrong") +
             (sweep.classes_ok ? "" : ", class count wrong") +
             (r.seconds < kQutritBudgetSeconds ? "" : ", over time budget");
  return r;
}

CriterionResult sandwich(const AcceptanceOptions&) {
  CriterionResult r{3, "sandwich certificate: p=3 certified at 28, p=2 inside (8, 9]", false, "", 0.0};
  const auto start = Clock::now();
  bool ok = true;
  double worst3 = 0.0, worst2 = 0.0;
  const double qubit_value = 8.0 + (std::sqrt(3.0) - 1.0) / 2.0;
  for (const auto& f : PhaseSpace::get(3).facets()) {
    const ExclusivityGraph g = build_graph(f);
    const SandwichCertificate c = sandwich_certificate(g, 27);
    worst3 = std::max(worst3, std::abs(c.quantum_value_lower - 28.0));
    ok = ok && std::abs(c.quantum_value_lower - 28.0) < kQuantumValueTol && c.clique_cover_upper == 28 &&
         c.certified && c.theta_lower == 28.0 && c.alphastar_upper == 28.0;
  }
  for (const auto& f : PhaseSpace::get(2).facets()) {
    const ExclusivityGraph g = build_graph(f);
    const SandwichCertificate c = sandwich_certificate(g, 8);
    worst2 = std::max(worst2, std::abs(c.quantum_value_lower - qubit_value));
    ok = ok && std::abs(c.quantum_value_lower - qubit_value) < kQuantumValueTol && c.clique_cover_upper == 9 &&
         !c.certified && c.quantum_value_lower > 8.0 && c.theta_upper <= 9.0;
  }
  r.seconds = seconds_since(start);
  r.passed = ok;
  r.detail = "max |qv - 28| = " + fmt("%.3g", worst3) + ", max |qv - (8 + (sqrt3-1)/2)| = " + fmt("%.3g", worst2);
  return r;
}

CriterionResult operator_identity(const AcceptanceOptions&) {
  CriterionResult r{4, "operator identity: witness sum = (p^3 I - A^r) (x) I for p in {2,3}", false, "", 0.0};
  const auto start = Clock::now();
  double worst = 0.0;
  for (std::uint32_t p : {2u, 3u}) {
    for (const auto& f : PhaseSpace::get(p).facets()) {
      worst = std::max(worst, sigma_operator(f, std::numeric_limits<double>::infinity()).residual);
    }
  }
  r.seconds = seconds_since(start);
  r.passed = worst < kSigmaResidualTol;
  r.detail = "max Frobenius residual " + fmt("%.3g", worst);
  return r;
}

CriterionResult bijection(const AcceptanceOptions& opt) {
  CriterionResult r{5, "bijection: witness sign matches facet sign on random states", false, "", 0.0};
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (std::uint32_t p : {2u, 3u}) {
    std::optional<FacetVector> inject;
    if (opt.inject_facet && opt.inject_facet->p == p) inject = opt.inject_facet;
    const BijectionReport rep = verify_bijection(p, opt.trials, opt.seed + p, inject);
    ok = ok && rep.sign_mismatches == 0 && rep.max_identity_residual < kBijectionResidualTol;
    detail += (detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + ": " +
              std::to_string(rep.sign_mismatches) + " sign mismatches in " + std::to_string(rep.checks) +
              " checks, residual " + fmt("%.3g", rep.max_identity_residual) + ", seed " +
              std::to_string(rep.seed);
  }
  r.seconds = seconds_since(start);
  r.passed = ok;
  r.detail = detail;
  return r;
}

CriterionResult backend_equivalence(const AcceptanceOptions& opt) {
  CriterionResult r{6, "backend equivalence: symbolic vs numeric orthogonality at p=3", false, "", 0.0};
  const auto start = Clock::now();
  const auto& facets = PhaseSpace::get(3).facets();
  const MubCosetMap& map = MubCosetMap::get(3);
  std::vector<std::size_t> pairs(facets.size(), 0), disagreements(facets.size(), 0);
  parallel_for(facets.size(), opt.threads, [&](std::size_t f) {
    const auto projs = witness_set(facets[f]);
    for (std::size_t i = 0; i < projs.size(); ++i) {
      for (std::size_t j = i + 1; j < projs.size(); ++j) {
        ++pairs[f];
        if (orthogonal_symbolic(projs[i], projs[j], map) != orthogonal_numeric(projs[i], projs[j], 3))
          ++disagreements[f];
      }
    }
  });
  std::size_t total_dis = 0;
  bool counts_ok = true;
  for (std::size_t f = 0; f < facets.size(); ++f) {
    total_dis += disagreements[f];
    counts_ok = counts_ok && pairs[f] == 28680;
  }
  r.seconds = seconds_since(start);
  r.passed = counts_ok && total_dis == 0;
  r.detail = std::to_string(pairs.front()) + " pairs per facet over " + std::to_string(facets.size()) +
             " facets, " + std::to_string(total_dis) + " disagreements";
  return r;
}

CriterionResult phase_space(const AcceptanceOptions&) {
  CriterionResult r{7, "phase-space sets: 27 independent for u != r, 26 for u = r", false, "", 0.0};
  const auto start = Clock::now();
  const auto& facets = PhaseSpace::get(3).facets();
  bool off_ok = true, diag_ok = true;
  std::size_t diag_min = std::numeric_limits<std::size_t>::max(), diag_max = 0;
  std::string error;
  try {
    for (const auto& rf : facets) {
      const ExclusivityGraph g = build_graph(rf);
      for (const auto& u : facets) {
        for (const auto& v : facets) {
          if (u == rf) {
            const std::size_t count = phase_space_count(rf, u, v);
            diag_min = std::min(diag_min, count);
            diag_max = std::max(diag_max, count);
            diag_ok = diag_ok && count == 26;
          } else {
            const IndependentSet s = phase_space_independent_set(rf, u, v);
            off_ok = off_ok && s.size() == 27 && is_independent(g, s.vertices);
          }
        }
      }
    }
  } catch (const std::exception& e) {
    error = e.what();
  }
  r.seconds = seconds_since(start);
  r.passed = error.empty() && off_ok && diag_ok;
  r.detail = error.empty()
                 ? std::string("u != r: ") + (off_ok ? "all 27 and independent" : "count or independence failed") +
                       "; u = r: count in [" + std::to_string(diag_min) + ", " + std::to_string(diag_max) +
                       "], expected 26"
                 : "error: " + error;
  return r;
}

CriterionResult geometry(const AcceptanceOptions& opt) {
  CriterionResult r{8, "polytope geometry: qubit P_SIM = P_STAB, qutrit slice has bound magic", false, "", 0.0};
  const auto start = Clock::now();
  std::mt19937_64 rng(opt.seed);
  const auto& ps2 = PhaseSpace::get(2);
  std::size_t disagree = 0;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const DensityMatrix rho = random_density_matrix(2, rng);
    if (ps2.in_psim(rho).inside != ps2.in_pstab(rho)) ++disagree;
  }

  const auto& ps3 = PhaseSpace::get(3);
  const SliceSpec spec = default_slice(3, 101);
  const auto points = slice_scan(spec);
  std::size_t certified = 0, bound = 0;
  std::optional<SlicePoint> witness;
  for (const auto& pt : points) {
    if (pt.region != Region::BoundRegion) continue;
    ++bound;
    // Certified: strictly inside every simulable facet, strictly outside a
    // stabilizer facet, positive semidefinite.
    const CMatrix rho = spec.base + pt.s * spec.dir_s + pt.t * spec.dir_t;
    const FacetCheck sim = ps3.in_psim(rho);
    const FacetCheck stab = ps3.pstab_check(rho);
    if (sim.min_value > kFacetTol && stab.min_value < -kFacetTol && min_eigenvalue(rho) >= 0.0) {
      ++certified;
      if (!witness) witness = pt;
    }
  }
  r.seconds = seconds_since(start);
  r.passed = disagree == 0 && certified > 0;
  r.detail = std::to_string(disagree) + " qubit disagreements in " + std::to_string(opt.trials) + " states; " +
             std::to_string(bound) + " bound-region grid points, " + std::to_string(certified) + " certified";
  if (witness) r.detail += " (e.g. s=" + fmt("%.6g", witness->s) + ", t=" + fmt("%.6g", witness->t) + ")";
  return r;
}

CriterionResult solver_exactness(const AcceptanceOptions& opt) {
  CriterionResult r{9, "solver exactness: branch and bound = brute force on qubit subgraphs", false, "", 0.0};
  const auto start = Clock::now();
  std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
  const auto& facets = PhaseSpace::get(2).facets();
  std::vector<ExclusivityGraph> graphs;
  for (const auto& f : facets) graphs.push_back(build_graph(f));
  std::size_t mismatches = 0;
  for (std::size_t t = 0; t < kSubgraphTrials; ++t) {
    const ExclusivityGraph& g = graphs[std::uniform_int_distribution<std::size_t>(0, graphs.size() - 1)(rng)];
    std::vector<std::size_t> ids(g.vertex_count());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, kSubgraphMaxVertices)(rng);
    ids.resize(n);
    std::sort(ids.begin(), ids.end());
    const ExclusivityGraph sub = g.induced_subgraph(ids);
    const IndependentSet bb = max_independent_set(sub);
    const IndependentSet bf = brute_force_independent_set(sub);
    if (bb.size() != bf.size() || !is_independent(sub, bb.vertices)) ++mismatches;
  }
  r.seconds = seconds_since(start);
  r.passed = mismatches == 0;
  r.detail = std::to_string(mismatches) + " mismatches in " + std::to_string(kSubgraphTrials) + " subgraphs";
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  try {
    switch (id) {
      case 1: return qubit_graph(options);
      case 2: return qutrit_graph(options);
      case 3: return sandwich(options);
      case 4: return operator_identity(options);
      case 5: return bijection(options);
      case 6: return backend_equivalence(options);
      case 7: return phase_space(options);
      case 8: return geometry(options);
      case 9: return solver_exactness(options);
      default: break;
    }
  } catch (const std::exception& e) {
    return CriterionResult{id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what(), 0.0};
  }
  throw std::out_of_range("no acceptance criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<int> ids = options.only;
  if (ids.empty())
    for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, options));
  return out;
}

std::string format_line(const CriterionResult& r, bool with_time) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + "  [" + std::to_string(r.id) + "] " + r.title + ": " +
         r.detail + (with_time ? std::string(" (") + secs + " s)" : std::string());
}

nlohmann::json to_json(const CriterionResult& r) {
  return {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}};
}

nlohmann::json to_json(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    arr.push_back(to_json(r));
    all = all && r.passed;
  }
  return {{"passed", all}, {"criteria", arr}};
}

}  // namespace stabctx
