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

#include <set>
#include <tuple>

#include "catch_amalgamated.hpp"
#include "stabctx/ffield.hpp"

using namespace stabctx;

namespace {

std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t> entries(const SympMatrix& m) {
  return {m.alpha().value(), m.beta().value(), m.gamma().value(), m.eps().value()};
}

// Plain integer 2x2 product reduced mod p.
std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t> mul_mod(
    std::tuple<long, long, long, long> a, std::tuple<long, long, long, long> b, long p) {
  auto [a1, b1, c1, d1] = a;
  auto [a2, b2, c2, d2] = b;
  auto m = [p](long v) { return static_cast<std::uint32_t>(((v % p) + p) % p); };
  return {m(a1 * a2 + b1 * c2), m(a1 * b2 + b1 * d2), m(c1 * a2 + d1 * c2), m(c1 * b2 + d1 * d2)};
}

}  // namespace

TEST_CASE("primality and construction") {
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK_FALSE(is_prime(9));
  CHECK_THROWS_AS(Fp(1, 4), DomainError);
  CHECK_THROWS_AS(Fp(1, 1), DomainError);
  CHECK(Fp(-1, 5).value() == 4);
  CHECK(Fp(12, 5).value() == 2);
}

TEST_CASE("fp_inv examples") {
  CHECK(fp_inv(Fp(1, 5)).value() == 1);
  CHECK(fp_inv(Fp(2, 5)).value() == 3);
  CHECK(fp_inv(Fp(2, 7)).value() == 4);
  CHECK_THROWS_AS(fp_inv(Fp(0, 7)), DomainError);
}

TEST_CASE("field axioms hold exhaustively for small primes") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t a = 0; a < p; ++a) {
      const Fp fa(a, p);
      if (a != 0) CHECK((fa * fa.inv()).value() == 1);
      CHECK((fa + (-fa)).is_zero());
      for (std::uint32_t b = 0; b < p; ++b) {
        const Fp fb(b, p);
        CHECK((fa + fb).value() == (a + b) % p);
        CHECK((fa * fb).value() == (a * b) % p);
        CHECK((fa - fb).value() == (a + p - b) % p);
        if (b != 0) CHECK(((fa / fb) * fb) == fa);
      }
    }
  }
}

TEST_CASE("mixed moduli are rejected") {
  CHECK_THROWS_AS(Fp(1, 3) + Fp(1, 5), DomainError);
  CHECK_THROWS_AS(Fp(1, 3) * Fp(1, 5), DomainError);
}

TEST_CASE("SympMatrix enforces unit determinant") {
  CHECK_THROWS_AS(SympMatrix::from_ints(1, 1, 1, 1, 3), DomainError);
  CHECK_NOTHROW(SympMatrix::from_ints(2, 1, -1, 0, 3));
}

TEST_CASE("SL(2,Z_p) has p(p^2-1) elements and is closed") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const auto group = all_symplectic(p);
    CHECK(group.size() == p * (p * p - 1));
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint32_t>> seen;
    for (const auto& g : group) seen.insert(entries(g));
    CHECK(seen.size() == group.size());
    if (p <= 3) {
      for (const auto& a : group) {
        for (const auto& b : group) {
          const auto prod = a * b;
          CHECK(seen.count(entries(prod)) == 1);
          const auto expected = mul_mod({a.alpha().value(), a.beta().value(), a.gamma().value(), a.eps().value()},
                                        {b.alpha().value(), b.beta().value(), b.gamma().value(), b.eps().value()},
                                        p);
          CHECK(entries(prod) == expected);
        }
        CHECK((a * a.inverse()).is_identity());
      }
    }
  }
}

TEST_CASE("coset representatives") {
  CHECK(coset_rep(CosetLabel::finite(Fp(0, 3)), 3).is_identity());
  CHECK(entries(coset_rep(CosetLabel::infinity(), 3)) == std::make_tuple(2u, 1u, 2u, 0u));
  CHECK(entries(coset_rep(CosetLabel::finite(Fp(1, 3)), 3)) == std::make_tuple(1u, 1u, 0u, 1u));
  CHECK(all_coset_labels(3).size() == 4);
  CHECK(all_coset_labels(3).back().is_infinity());
  CHECK_THROWS(CosetLabel::infinity().value());
  for (std::uint32_t i = 0; i <= 5; ++i) CHECK(CosetLabel::from_index(i, 5).index(5) == i);
}

TEST_CASE("coset_decompose examples") {
  const auto [b0, c0] = coset_decompose(SympMatrix::identity(3));
  CHECK(b0 == CosetLabel::finite(Fp(0, 3)));
  CHECK(c0 == BpElement::identity(3));
  const auto [binf, cinf] = coset_decompose(SympMatrix::from_ints(2, 1, -1, 0, 3));
  CHECK(binf.is_infinity());
  CHECK(cinf == BpElement::identity(3));
}

TEST_CASE("coset decomposition recomposes every group element") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    std::set<std::pair<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>>> pairs;
    std::vector<std::size_t> coset_sizes(p + 1, 0);
    for (const auto& f : all_symplectic(p)) {
      const auto [b, c] = coset_decompose(f);
      CHECK(coset_rep(b, p) * c.matrix() == f);
      pairs.insert({b.index(p), {c.alpha().value(), c.gamma().value()}});
      ++coset_sizes[b.index(p)];
    }
    CHECK(pairs.size() == p * (p * p - 1));
    for (auto n : coset_sizes) CHECK(n == p * (p - 1));
  }
}

TEST_CASE("decompose inverts compose on (b, C) pairs") {
  for (std::uint32_t p : {3u, 5u}) {
    for (const auto& b : all_coset_labels(p)) {
      for (const auto& c : all_bp(p)) {
        const auto [b2, c2] = coset_decompose(coset_rep(b, p) * c.matrix());
        CHECK(b2 == b);
        CHECK(c2 == c);
      }
    }
  }
}

TEST_CASE("finite representatives compose additively") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (std::uint32_t b = 0; b < p; ++b) {
      for (std::uint32_t c = 0; c < p; ++c) {
        const auto lhs = coset_rep(CosetLabel::finite(Fp(b, p)), p) * coset_rep(CosetLabel::finite(Fp(c, p)), p);
        CHECK(lhs == coset_rep(CosetLabel::finite(Fp(b + c, p)), p));
      }
    }
  }
}

TEST_CASE("BP elements") {
  CHECK_THROWS_AS(BpElement(Fp(0, 3), Fp(1, 3)), DomainError);
  CHECK(all_bp(5).size() == 20);
  const auto m = BpElement(Fp(2, 5), Fp(3, 5)).matrix();
  CHECK(entries(m) == std::make_tuple(2u, 0u, 3u, 3u));  // 2^-1 = 3 mod 5
}

TEST_CASE("symp_conjugate examples") {
  const auto f1 = coset_rep(CosetLabel::finite(Fp(1, 3)), 3);
  for (const auto& b : all_coset_labels(3)) {
    CHECK(symp_conjugate(BpElement::identity(3), coset_rep(b, 3)) == coset_rep(b, 3));
  }
  CHECK(entries(symp_conjugate(BpElement(Fp(1, 3), Fp(1, 3)), f1)) == std::make_tuple(2u, 1u, 2u, 0u));
  const auto f1_5 = coset_rep(CosetLabel::finite(Fp(1, 5)), 5);
  CHECK(entries(symp_conjugate(BpElement(Fp(2, 5), Fp(0, 5)), f1_5)) == std::make_tuple(1u, 4u, 0u, 1u));
}
