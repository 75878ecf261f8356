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

#include "stabctx/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

#include <unsupported/Eigen/KroneckerProduct>

namespace stabctx {

std::string to_string(Region r) {
  switch (r) {
    case Region::InPstab: return "InPstab";
    case Region::BoundRegion: return "BoundRegion";
    case Region::Contextual: return "Contextual";
    case Region::NonState: return "NonState";
  }
  return "?";
}

WitnessEvaluator::WitnessEvaluator(std::uint32_t p) : p_(p) {
  for (const auto& r : PhaseSpace::get(p).facets()) sigmas_.push_back(sigma_operator(r).sigma);
}

const WitnessEvaluator& WitnessEvaluator::get(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<WitnessEvaluator>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<WitnessEvaluator>(p);
  return *slot;
}

double WitnessEvaluator::witness_value(std::size_t facet, const DensityMatrix& rho,
                                       const DensityMatrix& sigma) const {
  validate_unit_trace_hermitian(rho, p_);
  validate_unit_trace_hermitian(sigma, p_);
  const CMatrix joint = Eigen::kroneckerProduct(rho, sigma).eval();
  return (sigmas_.at(facet) * joint).trace().real();
}

double witness_value(const FacetVector& r, const DensityMatrix& rho, const DensityMatrix& sigma) {
  const auto& ps = PhaseSpace::get(r.p);
  return WitnessEvaluator::get(r.p).witness_value(ps.facet_index(r), rho, sigma);
}

StateClass classify_state(const DensityMatrix& rho, double tol) {
  const auto p = static_cast<std::uint32_t>(rho.rows());
  const auto& ps = PhaseSpace::get(p);
  StateClass out;
  const FacetCheck sim = ps.in_psim(rho, tol);
  out.facet_values = sim.values;
  out.min_facet = sim.min_facet;
  out.min_facet_value = sim.min_value;
  out.min_eigenvalue = min_eigenvalue(rho);
  out.boundary_ambiguous = sim.min_value < 0.0 && sim.min_value >= -tol;
  if (out.min_eigenvalue < -tol) {
    out.region = Region::NonState;
  } else if (!sim.inside) {
    out.region = Region::Contextual;
  } else if (ps.in_pstab(rho, tol)) {
    out.region = Region::InPstab;
  } else {
    out.region = Region::BoundRegion;
  }
  return out;
}

nlohmann::json to_json(const StateClass& c) {
  return {{"class", to_string(c.region)},
          {"boundary_ambiguous", c.boundary_ambiguous},
          {"facet_values", c.facet_values},
          {"min_facet", c.min_facet},
          {"min_facet_value", c.min_facet_value},
          {"min_eigenvalue", c.min_eigenvalue}};
}

namespace {

CMatrix traceless_part(const CMatrix& m) {
  const auto n = m.rows();
  return m - (m.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
}

double hs_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

}  // namespace

SliceSpec default_slice(std::uint32_t p, std::size_t grid) {
  if (p == 2) throw DomainError("the default slice is defined for odd p");
  const auto& ps = PhaseSpace::get(p);
  CMatrix d1 = traceless_part(strange_state(p));
  d1 /= d1.norm();
  CMatrix d2 = traceless_part(facet_min_state(ps.facets().at(1)));
  d2 -= hs_inner(d1, d2) * d1;
  d2 /= d2.norm();
  SliceSpec spec;
  spec.base = maximally_mixed(p);
  spec.dir_s = d1;
  spec.dir_t = d2;
  spec.grid = grid;
  spec.s_min = spec.t_min = -1.0;
  spec.s_max = spec.t_max = 1.0;
  return spec;
}

std::vector<SlicePoint> slice_scan(const SliceSpec& spec, double tol, unsigned threads) {
  const auto p = static_cast<std::uint32_t>(spec.base.rows());
  validate_unit_trace_hermitian(spec.base, p);
  for (const CMatrix* d : {&spec.dir_s, &spec.dir_t}) {
    if (d->rows() != p || d->cols() != p) throw std::invalid_argument("slice direction has wrong shape");
    if ((*d - d->adjoint()).norm() > kNumericTol) throw std::invalid_argument("slice direction is not Hermitian");
    if (std::abs(d->trace()) > kNumericTol) throw std::invalid_argument("slice direction is not traceless");
  }
  if (spec.grid < 2) throw std::invalid_argument("slice grid needs at least 2 points per axis");
  const double ds = (spec.s_max - spec.s_min) / static_cast<double>(spec.grid - 1);
  const double dt = (spec.t_max - spec.t_min) / static_cast<double>(spec.grid - 1);
  PhaseSpace::get(p);
  std::vector<SlicePoint> out(spec.grid * spec.grid);
  auto rows = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < spec.grid; i += stride) {
      for (std::size_t j = 0; j < spec.grid; ++j) {
        SlicePoint& pt = out[i * spec.grid + j];
        pt.s = spec.s_min + ds * static_cast<double>(i);
        pt.t = spec.t_min + dt * static_cast<double>(j);
        CMatrix rho = spec.base + pt.s * spec.dir_s + pt.t * spec.dir_t;
        rho = (0.5 * (rho + rho.adjoint())).eval();
        const StateClass c = classify_state(rho, tol);
        pt.region = c.region;
        pt.min_facet = c.min_facet_value;
        pt.min_eig = c.min_eigenvalue;
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(spec.grid)));
  if (threads == 1) {
    rows(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(rows, t, threads);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::string slice_csv(const std::vector<SlicePoint>& points) {
  std::string out = "s,t,class,min_facet,min_eig\n";
  char buf[160];
  for (const auto& pt : points) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%s,%.12g,%.12g\n", pt.s, pt.t,
                  to_string(pt.region).c_str(), pt.min_facet, pt.min_eig);
    out += buf;
  }
  return out;
}

DensityMatrix random_density_matrix(std::uint32_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, dim);
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

DensityMatrix random_pure_state(std::uint32_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector psi(dim);
  for (std::uint32_t i = 0; i < dim; ++i) psi(i) = Complex(normal(rng), normal(rng));
  psi.normalize();
  return projector_of(psi);
}

BijectionReport verify_bijection(std::uint32_t p, std::size_t trials, std::uint64_t seed,
                                 const std::optional<FacetVector>& witness_override) {
  const auto& ps = PhaseSpace::get(p);
  const auto& eval = WitnessEvaluator::get(p);
  std::optional<CMatrix> override_sigma;
  if (witness_override)
    override_sigma = sigma_operator(*witness_override, std::numeric_limits<double>::infinity()).sigma;

  BijectionReport rep;
  rep.p = p;
  rep.trials = trials;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  const double p3 = static_cast<double>(p) * p * p;
  const DensityMatrix mixed = maximally_mixed(p);

  for (std::size_t t = 0; t < trials; ++t) {
    const DensityMatrix rho = random_density_matrix(p, rng);
    // Alternate mixed and pure second-system states.
    const DensityMatrix sigma = (t % 2 == 0) ? random_density_matrix(p, rng) : random_pure_state(p, rng);
    const CMatrix joint = Eigen::kroneckerProduct(rho, sigma).eval();
    const CMatrix joint_mixed = Eigen::kroneckerProduct(rho, mixed).eval();
    for (std::size_t f = 0; f < ps.facets().size(); ++f) {
      const CMatrix& sig = override_sigma ? *override_sigma : eval.sigma(f);
      const double w = (sig * joint).trace().real();
      const double w_mixed = (sig * joint_mixed).trace().real();
      const double facet_value = (rho * ps.facet_operators()[f]).trace().real();
      ++rep.checks;
      // Compare signs of (w - p^3) and -facet_value, treating |x| < 1e-8 as zero.
      auto sgn = [](double x) { return x > 1e-8 ? 1 : (x < -1e-8 ? -1 : 0); };
      if (sgn(w - p3) != sgn(-facet_value)) ++rep.sign_mismatches;
      rep.max_identity_residual = std::max(rep.max_identity_residual, std::abs(w - (p3 - facet_value)));
      rep.max_sigma_dependence = std::max(rep.max_sigma_dependence, std::abs(w - w_mixed));
    }
  }
  rep.passed = rep.sign_mismatches == 0 && rep.max_identity_residual < 1e-8;
  return rep;
}

nlohmann::json to_json(const BijectionReport& r) {
  return {{"p", r.p},
          {"trials", r.trials},
          {"seed", r.seed},
          {"checks", r.checks},
          {"sign_mismatches", r.sign_mismatches},
          {"max_identity_residual", r.max_identity_residual},
          {"max_sigma_dependence", r.max_sigma_dependence},
          {"passed", r.passed}};
}

}  // namespace stabctx
