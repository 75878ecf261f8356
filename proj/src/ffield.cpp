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

#include "stabctx/ffield.hpp"

#include <sstream>

namespace stabctx {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) {
    throw DomainError("p must be prime (got " + std::to_string(p) + ")");
  }
}

Fp::Fp(std::int64_t value, std::uint32_t p) : modulus_(p) {
  require_prime(p);
  std::int64_t r = value % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  value_ = static_cast<std::uint32_t>(r);
}

void Fp::check_same_field(Fp other) const {
  if (other.modulus_ != modulus_) {
    throw DomainError("mixed moduli " + std::to_string(modulus_) + " and " +
                      std::to_string(other.modulus_));
  }
}

Fp Fp::operator+(Fp other) const {
  check_same_field(other);
  std::uint64_t s = std::uint64_t{value_} + other.value_;
  return Fp(static_cast<std::uint32_t>(s % modulus_), modulus_, Unchecked{});
}

Fp Fp::operator-(Fp other) const {
  check_same_field(other);
  std::uint64_t s = std::uint64_t{value_} + modulus_ - other.value_;
  return Fp(static_cast<std::uint32_t>(s % modulus_), modulus_, Unchecked{});
}

Fp Fp::operator*(Fp other) const {
  check_same_field(other);
  std::uint64_t s = std::uint64_t{value_} * other.value_;
  return Fp(static_cast<std::uint32_t>(s % modulus_), modulus_, Unchecked{});
}

Fp Fp::operator/(Fp other) const { return *this * other.inv(); }

Fp Fp::operator-() const {
  return Fp(value_ == 0 ? 0 : modulus_ - value_, modulus_, Unchecked{});
}

Fp Fp::inv() const {
  if (value_ == 0) throw DomainError("inverse of zero in Z_" + std::to_string(modulus_));
  std::int64_t old_r = value_, r = modulus_;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  // old_r == gcd == 1 since the modulus is prime.
  std::int64_t m = modulus_;
  std::int64_t v = ((old_s % m) + m) % m;
  return Fp(static_cast<std::uint32_t>(v), modulus_, Unchecked{});
}

std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.value(); }

Fp fp_inv(Fp a) { return a.inv(); }

SympMatrix::SympMatrix(Fp alpha, Fp beta, Fp gamma, Fp eps)
    : alpha_(alpha), beta_(beta), gamma_(gamma), eps_(eps) {
  Fp det = alpha * eps - beta * gamma;
  if (det.value() != 1) {
    std::ostringstream msg;
    msg << "matrix (" << alpha << " " << beta << "; " << gamma << " " << eps
        << ") has determinant " << det << " mod " << alpha.modulus();
    throw DomainError(msg.str());
  }
}

SympMatrix SympMatrix::from_ints(std::int64_t alpha, std::int64_t beta,
                                 std::int64_t gamma, std::int64_t eps,
                                 std::uint32_t p) {
  return SympMatrix(Fp(alpha, p), Fp(beta, p), Fp(gamma, p), Fp(eps, p));
}

SympMatrix SympMatrix::identity(std::uint32_t p) { return from_ints(1, 0, 0, 1, p); }

SympMatrix SympMatrix::operator*(const SympMatrix& rhs) const {
  return SympMatrix(alpha_ * rhs.alpha_ + beta_ * rhs.gamma_,
                    alpha_ * rhs.beta_ + beta_ * rhs.eps_,
                    gamma_ * rhs.alpha_ + eps_ * rhs.gamma_,
                    gamma_ * rhs.beta_ + eps_ * rhs.eps_);
}

SympMatrix SympMatrix::inverse() const { return SympMatrix(eps_, -beta_, -gamma_, alpha_); }

bool SympMatrix::is_identity() const {
  return alpha_.value() == 1 && beta_.is_zero() && gamma_.is_zero() && eps_.value() == 1;
}

std::pair<Fp, Fp> SympMatrix::apply(Fp x, Fp z) const {
  return {alpha_ * x + beta_ * z, gamma_ * x + eps_ * z};
}

std::ostream& operator<<(std::ostream& os, const SympMatrix& m) {
  return os << "(" << m.alpha() << " " << m.beta() << "; " << m.gamma() << " "
            << m.eps() << ")";
}

std::vector<SympMatrix> all_symplectic(std::uint32_t p) {
  require_prime(p);
  std::vector<SympMatrix> out;
  out.reserve(std::size_t{p} * (std::size_t{p} * p - 1));
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t g = 0; g < p; ++g)
        for (std::uint32_t e = 0; e < p; ++e) {
          if ((std::uint64_t{a} * e + std::uint64_t{p - b % p} * g) % p == 1) {
            out.push_back(SympMatrix::from_ints(a, b, g, e, p));
          }
        }
  return out;
}

Fp CosetLabel::value() const {
  if (!value_) throw DomainError("coset label is infinity");
  return *value_;
}

std::uint32_t CosetLabel::index(std::uint32_t p) const {
  return value_ ? value_->value() : p;
}

CosetLabel CosetLabel::from_index(std::uint32_t index, std::uint32_t p) {
  if (index > p) throw DomainError("coset index out of range");
  return index == p ? infinity() : finite(Fp(index, p));
}

std::ostream& operator<<(std::ostream& os, const CosetLabel& b) {
  if (b.is_infinity()) return os << "inf";
  return os << b.value();
}

std::vector<CosetLabel> all_coset_labels(std::uint32_t p) {
  std::vector<CosetLabel> out;
  for (std::uint32_t i = 0; i <= p; ++i) out.push_back(CosetLabel::from_index(i, p));
  return out;
}

BpElement::BpElement(Fp alpha, Fp gamma) : alpha_(alpha), gamma_(gamma) {
  if (alpha.is_zero()) throw DomainError("BP element needs nonzero alpha");
  if (alpha.modulus() != gamma.modulus()) throw DomainError("mixed moduli in BP element");
}

BpElement BpElement::identity(std::uint32_t p) { return BpElement(Fp(1, p), Fp(0, p)); }

SympMatrix BpElement::matrix() const {
  Fp zero(0, alpha_.modulus());
  return SympMatrix(alpha_, zero, gamma_, alpha_.inv());
}

std::vector<BpElement> all_bp(std::uint32_t p) {
  require_prime(p);
  std::vector<BpElement> out;
  for (std::uint32_t a = 1; a < p; ++a)
    for (std::uint32_t g = 0; g < p; ++g) out.emplace_back(Fp(a, p), Fp(g, p));
  return out;
}

SympMatrix coset_rep(const CosetLabel& b, std::uint32_t p) {
  if (b.is_infinity()) return SympMatrix::from_ints(2, 1, -1, 0, p);
  return SympMatrix::from_ints(1, b.value().value(), 0, 1, p);
}

std::pair<CosetLabel, BpElement> coset_decompose(const SympMatrix& f) {
  const std::uint32_t p = f.modulus();
  // F_b^-1 F has upper-right entry beta - b*eps, so b = beta/eps when eps != 0.
  // eps == 0 forces beta != 0 and the infinite coset.
  CosetLabel b = f.eps().is_zero() ? CosetLabel::infinity()
                                   : CosetLabel::finite(f.beta() / f.eps());
  SympMatrix c = coset_rep(b, p).inverse() * f;
  if (!c.beta().is_zero()) {
    throw std::logic_error("coset decomposition left a nonzero beta entry");
  }
  return {b, BpElement(c.alpha(), c.gamma())};
}

SympMatrix symp_conjugate(const BpElement& c, const SympMatrix& f_b) {
  SympMatrix cm = c.matrix();
  return cm.inverse() * f_b * cm;
}

}  // namespace stabctx
