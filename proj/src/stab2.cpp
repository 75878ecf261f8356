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

#include "stabctx/stab2.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace stabctx {

SympMatrix EntProjector::f() const { return coset_rep(b, x.modulus()) * c.matrix(); }

BasisId basis_of(const StabProjector& proj) {
  if (const auto* s = std::get_if<SepProjector>(&proj)) return SepBasis{s->basis};
  const auto& e = std::get<EntProjector>(proj);
  return EntBasis{e.b, e.c};
}

std::size_t basis_index(const BasisId& id, std::uint32_t p) {
  if (const auto* s = std::get_if<SepBasis>(&id)) return s->basis - 1;
  const auto& e = std::get<EntBasis>(id);
  const std::size_t bp_size = std::size_t{p} * (p - 1);
  const std::size_t bp_index = std::size_t{e.c.alpha().value() - 1} * p + e.c.gamma().value();
  return p + 1 + e.b.index(p) * bp_size + bp_index;
}

std::size_t basis_count(std::uint32_t p) { return std::size_t{p} * p * p + 1; }

std::size_t witness_set_size(std::uint32_t p) {
  const std::size_t pp = p;
  return pp * (pp * pp - 1) + pp * pp * (pp * pp * pp - pp);
}

std::vector<EntProjector> entangled_projectors(std::uint32_t p) {
  require_prime(p);
  std::vector<EntProjector> out;
  out.reserve(std::size_t{p} * p * (std::size_t{p} * p * p - p));
  const auto bps = all_bp(p);
  for (const auto& b : all_coset_labels(p))
    for (const auto& c : bps)
      for (std::uint32_t x = 0; x < p; ++x)
        for (std::uint32_t z = 0; z < p; ++z) out.push_back({b, c, Fp(x, p), Fp(z, p)});
  return out;
}

std::vector<StabProjector> witness_set(const FacetVector& r) {
  const std::uint32_t p = r.p;
  require_prime(p);
  if (r.r.size() != p + 1) throw std::invalid_argument("facet vector must have p+1 entries");
  std::vector<StabProjector> out;
  out.reserve(witness_set_size(p));
  for (std::uint32_t basis = 1; basis <= p + 1; ++basis)
    for (std::uint32_t s = 0; s < p; ++s) {
      if (s == r.level(basis) % p) continue;
      for (std::uint32_t k = 0; k < p; ++k) out.push_back(SepProjector{basis, s, k});
    }
  for (auto& e : entangled_projectors(p)) out.push_back(std::move(e));
  return out;
}

MubCosetMap::MubCosetMap(std::uint32_t p) : p_(p) {
  require_prime(p);
  if (p == 2) throw UnsupportedBackend("coset labelling of MUBs is built for odd p");
  const auto& ps = PhaseSpace::get(p);
  const std::vector<CosetLevel> empty_row(p, CosetLevel{CosetLabel::infinity(), p});
  forward_.assign(p + 1, empty_row);
  backward_.assign(p + 1, std::vector<MubIndex>(p, MubIndex{0, 0}));

  for (const auto& b : all_coset_labels(p)) {
    const CMatrix u = symplectic_unitary(coset_rep(b, p));
    for (std::uint32_t k = 0; k < p; ++k) {
      const CMatrix proj = projector_of(u.col(k));
      int matches = 0;
      for (std::uint32_t basis = 1; basis <= p + 1; ++basis)
        for (std::uint32_t q = 0; q < p; ++q) {
          if ((proj - ps.mub_projector({basis, q})).norm() < 1e-9) {
            ++matches;
            if (forward_[basis - 1][q].k != p) {
              throw std::logic_error("MUB projector matched by two coset states");
            }
            forward_[basis - 1][q] = CosetLevel{b, k};
            backward_[b.index(p)][k] = MubIndex{basis, q};
          }
        }
      if (matches != 1) {
        std::ostringstream msg;
        msg << "coset state U_{F_" << b << "}|" << k << "> matched " << matches
            << " MUB projectors";
        throw std::logic_error(msg.str());
      }
    }
  }
  // Every basis must come from a single coset.
  for (std::uint32_t basis = 1; basis <= p + 1; ++basis)
    for (std::uint32_t q = 1; q < p; ++q) {
      if (!(forward_[basis - 1][q].b == forward_[basis - 1][0].b)) {
        throw std::logic_error("MUB basis " + std::to_string(basis) + " spans two cosets");
      }
    }
}

const MubCosetMap& MubCosetMap::get(std::uint32_t p) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<MubCosetMap>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[p];
  if (!slot) slot = std::make_unique<MubCosetMap>(p);
  return *slot;
}

MubCosetMap::CosetLevel MubCosetMap::to_coset(MubIndex m) const {
  if (m.basis < 1 || m.basis > p_ + 1 || m.level >= p_) throw std::out_of_range("MUB index");
  return forward_[m.basis - 1][m.level];
}

MubIndex MubCosetMap::to_mub(const CosetLabel& b, std::uint32_t k) const {
  if (k >= p_) throw std::out_of_range("coset level");
  return backward_.at(b.index(p_))[k];
}

CosetLabel MubCosetMap::coset_of_basis(std::uint32_t basis) const {
  return to_coset({basis, 0}).b;
}

MubCosetMap mub_coset_map(std::uint32_t p) { return MubCosetMap::get(p); }

bool orth_sep_sep(const SepProjector& a, const SepProjector& b) {
  const bool first = a.basis == b.basis && a.level != b.level;
  const bool second = a.k != b.k;
  return first || second;
}

bool orth_ent_ent(const EntProjector& a, const EntProjector& b) {
  const SympMatrix fa_inv = a.f().inverse();
  const SympMatrix g = fa_inv * b.f();
  const auto [dx, dz] = fa_inv.apply(b.x - a.x, b.z - a.z);
  const std::uint32_t p = g.modulus();
  bool nonorthogonal;
  if (g.is_identity()) {
    nonorthogonal = dx.is_zero() && dz.is_zero();
  } else if (g.trace() != Fp(2, p)) {
    nonorthogonal = true;
  } else if (!g.beta().is_zero()) {
    nonorthogonal = g.beta() * dz == (Fp(1, p) - g.alpha()) * dx;
  } else {
    nonorthogonal = dx.is_zero();
  }
  return !nonorthogonal;
}

bool orth_ent_sep(const EntProjector& e, const SepProjector& s, const MubCosetMap& map) {
  const std::uint32_t p = map.p();
  const auto sep = map.to_coset({s.basis, s.level});
  if (!(sep.b == e.b)) return false;
  const Fp rhs = Fp(sep.k, p) - e.c.alpha() * Fp(s.k, p);
  const Fp lhs = e.b.is_infinity() ? -e.z : e.x - e.b.value() * e.z;
  return lhs != rhs;
}

bool orthogonal_symbolic(const StabProjector& a, const StabProjector& b, const MubCosetMap& map) {
  const auto* sa = std::get_if<SepProjector>(&a);
  const auto* sb = std::get_if<SepProjector>(&b);
  if (sa && sb) return orth_sep_sep(*sa, *sb);
  if (!sa && !sb) return orth_ent_ent(std::get<EntProjector>(a), std::get<EntProjector>(b));
  if (sa) return orth_ent_sep(std::get<EntProjector>(b), *sa, map);
  return orth_ent_sep(std::get<EntProjector>(a), *sb, map);
}

CVector state_vector(const StabProjector& proj, std::uint32_t p) {
  if (const auto* s = std::get_if<SepProjector>(&proj)) {
    const CVector& first = PhaseSpace::get(p).mub_vector({s->basis, s->level});
    CVector out = CVector::Zero(std::size_t{p} * p);
    for (std::uint32_t a = 0; a < p; ++a) out(a * p + s->k) = first(a);
    return out;
  }
  const auto& e = std::get<EntProjector>(proj);
  return jamiolkowski_state(e.x, e.z, e.f());
}

bool orthogonal_numeric(const StabProjector& a, const StabProjector& b, std::uint32_t p,
                        double tol) {
  const Complex overlap = state_vector(a, p).dot(state_vector(b, p));
  return std::norm(overlap) < tol;
}

nlohmann::json projector_json(const StabProjector& proj, std::uint32_t p) {
  nlohmann::json j;
  if (const auto* s = std::get_if<SepProjector>(&proj)) {
    j["tag"] = "sep";
    j["basis"] = s->basis;
    j["level"] = s->level;
    j["k"] = s->k;
  } else {
    const auto& e = std::get<EntProjector>(proj);
    const SympMatrix f = e.f();
    j["tag"] = "ent";
    j["b"] = e.b.is_infinity() ? nlohmann::json("inf") : nlohmann::json(e.b.value().value());
    j["c"] = {e.c.alpha().value(), e.c.gamma().value()};
    j["x"] = e.x.value();
    j["z"] = e.z.value();
    j["F"] = {f.alpha().value(), f.beta().value(), f.gamma().value(), f.eps().value()};
  }
  j["basis_id"] = basis_index(basis_of(proj), p);
  return j;
}

std::string projectors_jsonl(const std::vector<StabProjector>& projs, std::uint32_t p) {
  std::string out;
  for (const auto& proj : projs) {
    out += projector_json(proj, p).dump();
    out += '\n';
  }
  return out;
}

}  // namespace stabctx
