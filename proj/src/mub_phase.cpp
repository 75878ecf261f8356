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

#include "stabctx/mub_phase.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace stabctx {

std::string to_string(const FacetVector& r) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < r.r.size(); ++i) os << (i ? "," : "") << r.r[i];
  os << "]";
  return os.str();
}

CMatrix mub_operator(std::uint32_t basis, std::uint32_t p) {
  if (basis < 1 || basis > p + 1) throw std::out_of_range("MUB basis index out of range");
  if (basis == 1) return displacement_matrix(Fp(0, p), Fp(1, p));
  if (basis == 2) return displacement_matrix(Fp(1, p), Fp(0, p));
  return displacement_matrix(Fp(1, p), Fp(basis - 2, p));
}

std::vector<FacetVector> facet_family(std::uint32_t p) {
  require_prime(p);
  std::vector<FacetVector> out;
  if (p == 2) {
    for (std::uint32_t n = 0; n < 8; ++n) {
      out.push_back({2, {(n >> 2) & 1u, (n >> 1) & 1u, n & 1u}, FacetKind::Simulable});
    }
    return out;
  }
  std::vector<std::uint32_t> a(p + 1), b(p + 1);
  a[0] = 1;
  a[1] = 0;
  for (std::uint32_t i = 2; i <= p; ++i) a[i] = i - 1;
  b[0] = 0;
  for (std::uint32_t i = 1; i <= p; ++i) b[i] = p - 1;
  for (std::uint32_t x = 0; x < p; ++x)
    for (std::uint32_t z = 0; z < p; ++z) {
      FacetVector r{p, std::vector<std::uint32_t>(p + 1), FacetKind::Simulable};
      for (std::uint32_t i = 0; i <= p; ++i) r.r[i] = (x * a[i] + z * b[i]) % p;
      out.push_back(std::move(r));
    }
  return out;
}

std::vector<FacetVector> all_generic_facets(std::uint32_t p) {
  require_prime(p);
  std::size_t count = 1;
  for (std::uint32_t i = 0; i <= p; ++i) count *= p;
  std::vector<FacetVector> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    FacetVector r{p, std::vector<std::uint32_t>(p + 1), FacetKind::Generic};
    std::size_t m = n;
    for (std::size_t i = p + 1; i-- > 0;) {
      r.r[i] = static_cast<std::uint32_t>(m % p);
      m /= p;
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

// Spectral projector (1/p) sum_k (lambda^-1 D)^k onto the lambda eigenspace of
// a displacement operator with D^p = I.
CMatrix spectral_projector(const CMatrix& d, Complex lambda, std::uint32_t p) {
  CMatrix term = CMatrix::Identity(p, p);
  CMatrix acc = CMatrix::Zero(p, p);
  const CMatrix step = d / lambda;
  for (std::uint32_t k = 0; k < p; ++k) {
    acc += term;
    term = term * step;
  }
  return acc / static_cast<double>(p);
}

CVector phase_fixed_vector(const CMatrix& proj) {
  Eigen::Index col = 0;
  proj.colwise().norm().maxCoeff(&col);
  CVector v = proj.col(col);
  v.normalize();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  }
  return v;
}

}  // namespace

PhaseSpace::PhaseSpace(std::uint32_t p) : p_(p) {
  require_prime(p);
  projectors_.resize(p + 1);
  vectors_.resize(p + 1);
  for (std::uint32_t basis = 1; basis <= p + 1; ++basis) {
    const CMatrix d = mub_operator(basis, p);
    for (std::uint32_t q = 0; q < p; ++q) {
      CMatrix proj = spectral_projector(d, root_of_unity(p, q), p);
      const double rank = proj.trace().real();
      if (std::abs(rank - 1.0) > 1e-9) {
        throw std::logic_error("eigenvalue of MUB operator " + std::to_string(basis) +
                               " has multiplicity " + std::to_string(rank));
      }
      CVector v = phase_fixed_vector(proj);
      projectors_[basis - 1].push_back(projector_of(v));
      vectors_[basis - 1].push_back(std::move(v));
    }
  }
  facets_ = facet_family(p);
  for (const auto& r : facets_) facet_ops_.push_back(a_operator(r));
}

const PhaseSpace& PhaseSpace::get(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<PhaseSpace>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<PhaseSpace>(p);
  return *slot;
}

const HermitianOperator& PhaseSpace::mub_projector(MubIndex m) const {
  if (m.basis < 1 || m.basis > p_ + 1 || m.level >= p_) {
    throw std::out_of_range("MUB index out of range");
  }
  return projectors_[m.basis - 1][m.level];
}

const CVector& PhaseSpace::mub_vector(MubIndex m) const {
  mub_projector(m);
  return vectors_[m.basis - 1][m.level];
}

HermitianOperator PhaseSpace::a_operator(const FacetVector& r) const {
  if (r.p != p_ || r.r.size() != p_ + 1) throw std::invalid_argument("facet vector has wrong shape");
  HermitianOperator a = -CMatrix::Identity(p_, p_);
  for (std::uint32_t basis = 1; basis <= p_ + 1; ++basis) {
    a += mub_projector({basis, r.level(basis) % p_});
  }
  return a;
}

std::size_t PhaseSpace::facet_index(const FacetVector& r) const {
  for (std::size_t i = 0; i < facets_.size(); ++i) {
    if (facets_[i] == r) return i;
  }
  throw std::out_of_range("facet " + to_string(r) + " is not a simulable facet");
}

namespace {

FacetCheck check_family(const CMatrix& rho, const std::vector<HermitianOperator>& ops,
                        double tol) {
  FacetCheck out;
  out.values.reserve(ops.size());
  out.min_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const double v = (rho * ops[i]).trace().real();
    out.values.push_back(v);
    if (v < out.min_value) {
      out.min_value = v;
      out.min_facet = i;
    }
  }
  out.inside = out.min_value >= -tol;
  return out;
}

}  // namespace

FacetCheck PhaseSpace::in_psim(const DensityMatrix& rho, double tol) const {
  validate_unit_trace_hermitian(rho, p_);
  return check_family(rho, facet_ops_, tol);
}

FacetCheck PhaseSpace::pstab_check(const DensityMatrix& rho, double tol) const {
  validate_unit_trace_hermitian(rho, p_);
  // Tr(rho A^q) = -1 + sum_j Tr(rho Pi_j^{q_j}); enumerate q in base-p order.
  std::vector<std::vector<double>> t(p_ + 1, std::vector<double>(p_));
  for (std::uint32_t j = 0; j <= p_; ++j)
    for (std::uint32_t q = 0; q < p_; ++q) t[j][q] = (rho * projectors_[j][q]).trace().real();

  FacetCheck out;
  out.min_value = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> digits(p_ + 1, 0);
  std::size_t index = 0;
  while (true) {
    double v = -1.0;
    for (std::uint32_t j = 0; j <= p_; ++j) v += t[j][digits[j]];
    if (v < out.min_value) {
      out.min_value = v;
      out.min_facet = index;
    }
    ++index;
    std::size_t pos = p_ + 1;
    while (pos > 0 && ++digits[pos - 1] == p_) digits[--pos] = 0;
    if (pos == 0) break;
  }
  out.inside = out.min_value >= -tol;
  return out;
}

bool PhaseSpace::in_pstab(const DensityMatrix& rho, double tol) const {
  return pstab_check(rho, tol).inside;
}

double PhaseSpace::wigner(const DensityMatrix& rho, const FacetVector& u) const {
  if (p_ == 2) throw UnsupportedBackend("discrete Wigner function is used for odd p only");
  return (rho * facet_ops_.at(facet_index(u))).trace().real();
}

HermitianOperator mub_projector(MubIndex m, std::uint32_t p) {
  return PhaseSpace::get(p).mub_projector(m);
}

HermitianOperator a_operator(const FacetVector& r) { return PhaseSpace::get(r.p).a_operator(r); }

FacetCheck in_psim(const DensityMatrix& rho) {
  return PhaseSpace::get(static_cast<std::uint32_t>(rho.rows())).in_psim(rho);
}

bool in_pstab(const DensityMatrix& rho) {
  return PhaseSpace::get(static_cast<std::uint32_t>(rho.rows())).in_pstab(rho);
}

double wigner(const DensityMatrix& rho, const FacetVector& u) {
  return PhaseSpace::get(u.p).wigner(rho, u);
}

DensityMatrix strange_state(std::uint32_t p) {
  require_prime(p);
  if (p == 2) throw DomainError("the strange state is defined for odd p");
  const auto& ps = PhaseSpace::get(p);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(ps.facet_operators().front());
  int multiplicity = 0;
  Eigen::Index where = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (std::abs(es.eigenvalues()(i) + 1.0) < 1e-9) {
      ++multiplicity;
      where = i;
    }
  }
  if (multiplicity != 1) {
    throw DomainError("the -1 eigenspace of A^0 has multiplicity " +
                      std::to_string(multiplicity) + " at p = " + std::to_string(p));
  }
  return projector_of(es.eigenvectors().col(where));
}

DensityMatrix t_state() {
  const auto& ps = PhaseSpace::get(2);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(ps.facet_operators().front());
  // Eigenvalues are sorted ascending; the lowest is (1 - sqrt 3) / 2.
  return projector_of(es.eigenvectors().col(0));
}

DensityMatrix facet_min_state(const FacetVector& r) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(PhaseSpace::get(r.p).a_operator(r));
  return projector_of(es.eigenvectors().col(0));
}

DensityMatrix maximally_mixed(std::uint32_t p) {
  return CMatrix::Identity(p, p) / static_cast<double>(p);
}

void validate_unit_trace_hermitian(const CMatrix& rho, std::size_t dim, double tol) {
  if (static_cast<std::size_t>(rho.rows()) != dim || static_cast<std::size_t>(rho.cols()) != dim) {
    throw std::invalid_argument("expected a " + std::to_string(dim) + "x" + std::to_string(dim) +
                                " matrix, got " + std::to_string(rho.rows()) + "x" +
                                std::to_string(rho.cols()));
  }
  if ((rho - rho.adjoint()).norm() > tol) throw std::invalid_argument("matrix is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) {
    throw std::invalid_argument("matrix does not have unit trace");
  }
}

double min_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace stabctx
