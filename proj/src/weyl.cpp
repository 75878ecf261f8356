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

#include "stabctx/weyl.hpp"

#include <cmath>
#include <numbers>

namespace stabctx {

Complex root_of_unity(std::uint32_t p, std::int64_t k) {
  std::int64_t m = static_cast<std::int64_t>(p);
  k = ((k % m) + m) % m;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / p);
}

CMatrix shift_matrix(std::uint32_t p) {
  CMatrix x = CMatrix::Zero(p, p);
  for (std::uint32_t j = 0; j < p; ++j) x((j + 1) % p, j) = 1.0;
  return x;
}

CMatrix clock_matrix(std::uint32_t p) {
  CMatrix z = CMatrix::Zero(p, p);
  for (std::uint32_t j = 0; j < p; ++j) z(j, j) = root_of_unity(p, j);
  return z;
}

CMatrix displacement_matrix(Fp x, Fp z) {
  const std::uint32_t p = x.modulus();
  const std::uint32_t xv = x.value(), zv = z.value();
  Complex phase;
  if (p == 2) {
    phase = (xv * zv == 1) ? Complex(0.0, 1.0) : Complex(1.0, 0.0);
  } else {
    Fp half = Fp(2, p).inv();
    phase = root_of_unity(p, (half * x * z).value());
  }
  // X^x Z^z |k> = omega^{zk} |k + x>.
  CMatrix d = CMatrix::Zero(p, p);
  for (std::uint32_t k = 0; k < p; ++k) {
    d((k + xv) % p, k) = phase * root_of_unity(p, std::int64_t{zv} * k);
  }
  return d;
}

CMatrix symplectic_unitary(const SympMatrix& f) {
  const std::uint32_t p = f.modulus();
  if (p == 2) {
    throw UnsupportedBackend(
        "symplectic_unitary needs odd p; use clifford_rep_qubit() for qubits");
  }
  // tau^n = omega^{2^-1 n}.
  const Fp half = Fp(2, p).inv();
  auto tau_pow = [&](Fp n) { return root_of_unity(p, (half * n).value()); };

  CMatrix u = CMatrix::Zero(p, p);
  if (!f.beta().is_zero()) {
    const Fp binv = f.beta().inv();
    const double norm = 1.0 / std::sqrt(static_cast<double>(p));
    for (std::uint32_t j = 0; j < p; ++j) {
      for (std::uint32_t k = 0; k < p; ++k) {
        Fp fj(j, p), fk(k, p);
        Fp expo = binv * (f.alpha() * fk * fk - Fp(2, p) * fj * fk + f.eps() * fj * fj);
        u(j, k) = norm * tau_pow(expo);
      }
    }
  } else {
    for (std::uint32_t k = 0; k < p; ++k) {
      Fp fk(k, p);
      u((f.alpha() * fk).value(), k) = tau_pow(f.alpha() * f.gamma() * fk * fk);
    }
  }
  return u;
}

namespace {

// Symplectic action of a qubit unitary, read off from U X U^dag and U Z U^dag.
std::optional<SympMatrix> qubit_action(const CMatrix& u) {
  const Fp zero(0, 2), one(1, 2);
  const CMatrix x = displacement_matrix(one, zero);
  const CMatrix z = displacement_matrix(zero, one);
  auto image = [&](const CMatrix& pauli) -> std::optional<std::pair<Fp, Fp>> {
    CMatrix conj = u * pauli * u.adjoint();
    for (std::uint32_t a = 0; a < 2; ++a)
      for (std::uint32_t b = 0; b < 2; ++b) {
        if (distance_up_to_phase(conj, displacement_matrix(Fp(a, 2), Fp(b, 2))) < kNumericTol)
          return std::make_pair(Fp(a, 2), Fp(b, 2));
      }
    return std::nullopt;
  };
  auto ix = image(x);
  auto iz = image(z);
  if (!ix || !iz) return std::nullopt;
  // Columns of F are the images of (1,0) and (0,1).
  return SympMatrix(ix->first, iz->first, ix->second, iz->second);
}

std::vector<QubitClifford> build_qubit_table() {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix h(2, 2);
  h << s, s, s, -s;
  CMatrix ph(2, 2);
  ph << 1, 0, 0, Complex(0, 1);

  // Breadth-first closure of <H, S> modulo global phase.
  std::vector<CMatrix> group{CMatrix::Identity(2, 2)};
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (const CMatrix* g : {&h, &ph}) {
      CMatrix cand = (*g) * group[i];
      bool seen = false;
      for (const auto& e : group) {
        if (distance_up_to_phase(cand, e) < kNumericTol) {
          seen = true;
          break;
        }
      }
      if (!seen) group.push_back(cand);
    }
  }
  if (group.size() != 24) {
    throw std::logic_error("single-qubit Clifford closure has " +
                           std::to_string(group.size()) + " elements, expected 24");
  }

  std::vector<QubitClifford> table;
  for (const SympMatrix& f : all_symplectic(2)) {
    bool found = false;
    for (const auto& u : group) {
      auto action = qubit_action(u);
      if (action && *action == f) {
        table.push_back({f, u});
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("no qubit Clifford realises a symplectic matrix");
  }
  return table;
}

}  // namespace

const std::vector<QubitClifford>& clifford_rep_qubit() {
  static const std::vector<QubitClifford> table = build_qubit_table();
  return table;
}

CMatrix clifford_unitary(const SympMatrix& f) {
  if (f.modulus() != 2) return symplectic_unitary(f);
  for (const auto& entry : clifford_rep_qubit()) {
    if (entry.f == f) return entry.unitary;
  }
  throw std::logic_error("qubit Clifford table is incomplete");
}

CVector jamiolkowski_state(Fp x, Fp z, const SympMatrix& f) {
  const std::uint32_t p = f.modulus();
  const CMatrix c = displacement_matrix(x, z) * clifford_unitary(f);
  // (C (x) I) sum_j |j>|j> / sqrt(p): amplitude of |a>|j> is C(a, j) / sqrt(p).
  CVector psi(std::size_t{p} * p);
  const double norm = 1.0 / std::sqrt(static_cast<double>(p));
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t j = 0; j < p; ++j) psi(a * p + j) = norm * c(a, j);
  return psi;
}

double unitarity_residual(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).norm();
}

double distance_up_to_phase(const CMatrix& a, const CMatrix& b) {
  // The minimising phase aligns b with a: e^{i phi} = <b, a> / |<b, a>|.
  const Complex inner = (b.adjoint() * a).trace();
  const Complex phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : Complex(1.0);
  return (a - phase * b).norm();
}

CMatrix projector_of(const CVector& psi) { return psi * psi.adjoint(); }

}  // namespace stabctx
