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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "stabctx/ffield.hpp"

namespace stabctx {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Default tolerance for unitarity, equality and orthogonality at p <= 7.
inline constexpr double kNumericTol = 1e-9;

/// The requested numeric construction does not exist for this p.
class UnsupportedBackend : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// exp(2 pi i k / p).
Complex root_of_unity(std::uint32_t p, std::int64_t k);

/// Generalised shift X|j> = |j+1> and clock Z|j> = omega^j |j>.
CMatrix shift_matrix(std::uint32_t p);
CMatrix clock_matrix(std::uint32_t p);

/// D_{x,z} = tau^{xz} X^x Z^z with tau = omega^{2^-1} for odd p, and
/// D_{x,z} = i^{xz} X^x Z^z for p = 2 (so D_{1,1} is exactly Pauli Y).
CMatrix displacement_matrix(Fp x, Fp z);

/// Metaplectic representative U_F of F in SL(2, Z_p), p odd. Satisfies
/// U_F D_{x,z} U_F^dagger = D_{F(x,z)} up to phase. Throws UnsupportedBackend
/// for p = 2; use clifford_rep_qubit() there.
CMatrix symplectic_unitary(const SympMatrix& f);

struct QubitClifford {
  SympMatrix f;
  CMatrix unitary;
};

/// One single-qubit Clifford per element of SL(2, Z_2), in all_symplectic(2)
/// order. Found by searching the 24-element Clifford group (mod phase)
/// generated by H and S for the first element with the required action.
const std::vector<QubitClifford>& clifford_rep_qubit();

/// U_F for any supported p: symplectic_unitary for odd p, the qubit table for p = 2.
CMatrix clifford_unitary(const SympMatrix& f);

/// (D_{x,z} U_F (x) I)|Phi> with |Phi> = sum_j |jj> / sqrt(p).
CVector jamiolkowski_state(Fp x, Fp z, const SympMatrix& f);

/// Frobenius norm of U^dagger U - I.
double unitarity_residual(const CMatrix& u);

/// Smallest ||a - e^{i phi} b|| over phases phi.
double distance_up_to_phase(const CMatrix& a, const CMatrix& b);

/// |psi><psi|.
CMatrix projector_of(const CVector& psi);

}  // namespace stabctx
