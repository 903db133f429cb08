// Copyright 2026 The spt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spt/pauli.hpp"

#include <cmath>

#include "spt/errors.hpp"

namespace spt {
namespace {

constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_sizes(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw DimensionError("Pauli strings act on " + std::to_string(p.n_qubits()) + " and " +
                         std::to_string(q.n_qubits()) + " qubits");
  }
}

}  // namespace

char to_char(PauliLetter p) { return "IXYZ"[static_cast<int>(p)]; }

PauliString::PauliString(std::size_t n_qubits, cplx coeff) : x_(n_qubits), z_(n_qubits), coeff_(coeff) {}

PauliString::PauliString(Bits x_mask, Bits z_mask, cplx coeff)
    : x_(std::move(x_mask)), z_(std::move(z_mask)), coeff_(coeff) {
  if (x_.size() != z_.size()) throw DimensionError("x and z masks differ in length");
}

PauliString PauliString::from_letters(std::string_view letters, cplx coeff) {
  Bits x(letters.size());
  Bits z(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) {
    switch (letters[q]) {
      case 'I':
      case '_':
        break;
      case 'X':
        x.set(q);
        break;
      case 'Y':
        x.set(q);
        z.set(q);
        break;
      case 'Z':
        z.set(q);
        break;
      default:
        throw std::invalid_argument("not a Pauli letter: '" + std::string(1, letters[q]) + "'");
    }
  }
  return PauliString(std::move(x), std::move(z), coeff);
}

PauliLetter PauliString::letter(std::size_t q) const {
  const bool x = x_.get(q);
  const bool z = z_.get(q);
  if (x) return z ? PauliLetter::Y : PauliLetter::X;
  return z ? PauliLetter::Z : PauliLetter::I;
}

std::string PauliString::letters() const {
  std::string s(n_qubits(), 'I');
  for (std::size_t q = 0; q < n_qubits(); ++q) s[q] = to_char(letter(q));
  return s;
}

// Each letter is i^{xz} X^x Z^z. Moving Z^{z1} past X^{x2} costs (-1)^{z1.x2},
// and the product X^{x3} Z^{z3} is re-expressed through i^{-x3 z3}.
PauliString multiply(const PauliString& p, const PauliString& q) {
  check_sizes(p, q);
  Bits x = p.x_mask() ^ q.x_mask();
  Bits z = p.z_mask() ^ q.z_mask();
  const std::size_t e = and_popcount(p.x_mask(), p.z_mask()) + and_popcount(q.x_mask(), q.z_mask()) +
                        2 * and_popcount(p.z_mask(), q.x_mask()) + 3 * and_popcount(x, z);
  return PauliString(std::move(x), std::move(z), p.coeff() * q.coeff() * kIPowers[e & 3]);
}

bool qubitwise_commutes(const PauliString& p, const PauliString& q) {
  check_sizes(p, q);
  const auto& px = p.x_mask().words();
  const auto& pz = p.z_mask().words();
  const auto& qx = q.x_mask().words();
  const auto& qz = q.z_mask().words();
  for (std::size_t w = 0; w < px.size(); ++w) {
    const std::uint64_t both = (px[w] | pz[w]) & (qx[w] | qz[w]);
    const std::uint64_t differ = (px[w] ^ qx[w]) | (pz[w] ^ qz[w]);
    if (both & differ) return false;
  }
  return true;
}

bool commutes(const PauliString& p, const PauliString& q) {
  check_sizes(p, q);
  const std::size_t anti = and_popcount(p.x_mask(), q.z_mask()) + and_popcount(p.z_mask(), q.x_mask());
  return (anti & 1u) == 0;
}

BasisAction basis_action(const PauliString& p, const Bits& b) {
  if (b.size() != p.n_qubits()) throw DimensionError("basis state length differs from Pauli string");
  const std::size_t e = p.y_count() + 2 * and_popcount(p.z_mask(), b);
  return {b ^ p.x_mask(), p.coeff() * kIPowers[e & 3]};
}

void PauliSum::add(const PauliString& p) {
  if (p.n_qubits() != n_qubits_) throw DimensionError("Pauli string size differs from sum");
  if (p.coeff() == cplx(0.0)) return;
  auto [it, inserted] = terms_.try_emplace(key_of(p), p.coeff());
  if (!inserted) it->second += p.coeff();
  prune(it);
}

void PauliSum::add(const PauliSum& s) {
  if (s.n_qubits_ != n_qubits_) throw DimensionError("Pauli sums act on different registers");
  for (const auto& [k, c] : s.terms_) {
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) it->second += c;
    prune(it);
  }
}

PauliSum& PauliSum::operator*=(cplx c) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= c;
    if (std::abs(it->second) < prune_tol_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

void PauliSum::prune(std::map<PauliKey, cplx>::iterator it) {
  if (std::abs(it->second) < prune_tol_) terms_.erase(it);
}

cplx PauliSum::coeff(const PauliKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

cplx PauliSum::coeff(std::string_view letters) const {
  return coeff(key_of(PauliString::from_letters(letters)));
}

std::vector<PauliString> PauliSum::strings() const {
  std::vector<PauliString> out;
  out.reserve(terms_.size());
  for (const auto& [k, c] : terms_) out.emplace_back(k.x, k.z, c);
  return out;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_) throw DimensionError("Pauli sums act on different registers");
  PauliSum out(a.n_qubits_, a.prune_tol_);
  for (const auto& [ka, ca] : a.terms_) {
    const PauliString pa(ka.x, ka.z, ca);
    for (const auto& [kb, cb] : b.terms_) {
      auto prod = multiply(pa, PauliString(kb.x, kb.z, cb));
      auto [it, inserted] = out.terms_.try_emplace(key_of(prod), prod.coeff());
      if (!inserted) it->second += prod.coeff();
    }
  }
  for (auto it = out.terms_.begin(); it != out.terms_.end();) {
    if (std::abs(it->second) < out.prune_tol_) {
      it = out.terms_.erase(it);
    } else {
      ++it;
    }
  }
  return out;
}

bool PauliSum::approx_equal(const PauliSum& o, double tol) const {
  if (n_qubits_ != o.n_qubits_) return false;
  for (const auto& [k, c] : terms_) {
    if (std::abs(c - o.coeff(k)) > tol) return false;
  }
  for (const auto& [k, c] : o.terms_) {
    if (std::abs(c - coeff(k)) > tol) return false;
  }
  return true;
}

}  // namespace spt
