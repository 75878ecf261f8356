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
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stabctx {

/// Raised on arithmetic that has no value in Z_p (inverse of zero, mixed
/// moduli, non-prime moduli).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_prime(std::uint32_t n);

/// Throws DomainError unless `p` is prime.
void require_prime(std::uint32_t p);

/// An element of the prime field Z_p. The modulus travels with the value so
/// that mixing fields is caught at runtime.
class Fp {
 public:
  /// Reduces `value` into {0, ..., p-1}; throws if `p` is not prime.
  Fp(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  Fp operator+(Fp other) const;
  Fp operator-(Fp other) const;
  Fp operator*(Fp other) const;
  Fp operator/(Fp other) const;
  Fp operator-() const;
  Fp inv() const;

  bool operator==(const Fp&) const = default;
  auto operator<=>(const Fp& other) const { return value_ <=> other.value_; }

 private:
  struct Unchecked {};
  Fp(std::uint32_t value, std::uint32_t p, Unchecked)
      : value_(value), modulus_(p) {}
  void check_same_field(Fp other) const;

  std::uint32_t value_;
  std::uint32_t modulus_;
};

std::ostream& operator<<(std::ostream& os, Fp a);

/// Multiplicative inverse by the extended Euclidean algorithm.
Fp fp_inv(Fp a);

/// 2x2 matrix over Z_p with unit determinant, row-major (alpha beta; gamma eps).
class SympMatrix {
 public:
  /// Throws DomainError when the determinant is not 1.
  SympMatrix(Fp alpha, Fp beta, Fp gamma, Fp eps);
  static SympMatrix from_ints(std::int64_t alpha, std::int64_t beta,
                              std::int64_t gamma, std::int64_t eps,
                              std::uint32_t p);
  static SympMatrix identity(std::uint32_t p);

  Fp alpha() const { return alpha_; }
  Fp beta() const { return beta_; }
  Fp gamma() const { return gamma_; }
  Fp eps() const { return eps_; }
  std::uint32_t modulus() const { return alpha_.modulus(); }

  SympMatrix operator*(const SympMatrix& rhs) const;
  SympMatrix inverse() const;
  Fp trace() const { return alpha_ + eps_; }
  bool is_identity() const;

  /// Action on a phase-space point: (x, z) -> (alpha x + beta z, gamma x + eps z).
  std::pair<Fp, Fp> apply(Fp x, Fp z) const;

  bool operator==(const SympMatrix&) const = default;

 private:
  Fp alpha_, beta_, gamma_, eps_;
};

std::ostream& operator<<(std::ostream& os, const SympMatrix& m);

/// All p(p^2-1) elements of SL(2, Z_p), lexicographic in (alpha, beta, gamma, eps).
std::vector<SympMatrix> all_symplectic(std::uint32_t p);

/// Label of a left coset of BP: an element of Z_p or the point at infinity.
class CosetLabel {
 public:
  static CosetLabel finite(Fp b) { return CosetLabel(b); }
  static CosetLabel infinity() { return CosetLabel(std::nullopt); }

  bool is_infinity() const { return !value_.has_value(); }
  /// Throws DomainError for the infinite label.
  Fp value() const;
  /// 0..p-1 for finite labels, p for infinity.
  std::uint32_t index(std::uint32_t p) const;
  static CosetLabel from_index(std::uint32_t index, std::uint32_t p);

  bool operator==(const CosetLabel&) const = default;

 private:
  explicit CosetLabel(std::optional<Fp> v) : value_(v) {}
  std::optional<Fp> value_;
};

std::ostream& operator<<(std::ostream& os, const CosetLabel& b);

/// The p+1 labels in index order: 0, 1, ..., p-1, infinity.
std::vector<CosetLabel> all_coset_labels(std::uint32_t p);

/// Element C = (alpha 0; gamma alpha^-1) of the computational-basis
/// preserving subgroup BP.
class BpElement {
 public:
  BpElement(Fp alpha, Fp gamma);
  static BpElement identity(std::uint32_t p);

  Fp alpha() const { return alpha_; }
  Fp gamma() const { return gamma_; }
  SympMatrix matrix() const;

  bool operator==(const BpElement&) const = default;

 private:
  Fp alpha_, gamma_;
};

/// All p(p-1) elements of BP, lexicographic in (alpha, gamma).
std::vector<BpElement> all_bp(std::uint32_t p);

/// F_b = (1 b; 0 1) for finite b and F_inf = (2 1; -1 0).
SympMatrix coset_rep(const CosetLabel& b, std::uint32_t p);

/// Unique (b, C) with coset_rep(b) * C == F.
std::pair<CosetLabel, BpElement> coset_decompose(const SympMatrix& f);

/// C^-1 F_b C.
SympMatrix symp_conjugate(const BpElement& c, const SympMatrix& f_b);

}  // namespace stabctx
