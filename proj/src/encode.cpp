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

#include "spt/encode.hpp"

#include <algorithm>
#include <memory>

#include "spt/errors.hpp"

namespace spt {
namespace {

// Rows of the GF(2) inverse of the matrix whose columns are `cols`.
std::vector<Bits> invert_columns(const std::vector<Bits>& cols) {
  const std::size_t n = cols.size();
  // Row-major copy of B augmented with the identity.
  std::vector<Bits> a(n, Bits(n));
  std::vector<Bits> inv(n, Bits(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (auto i : cols[j].indices()) a[i].set(j);
  }
  for (std::size_t i = 0; i < n; ++i) inv[i].set(i);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && !a[pivot].get(c)) ++pivot;
    if (pivot == n) throw ConfigurationError("encoding matrix is singular");
    std::swap(a[pivot], a[c]);
    std::swap(inv[pivot], inv[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != c && a[r].get(c)) {
        a[r] ^= a[c];
        inv[r] ^= inv[c];
      }
    }
  }
  return inv;
}

std::vector<Bits> build_columns(Mapping kind, std::size_t n) {
  std::vector<Bits> cols(n, Bits(n));
  for (std::size_t j = 0; j < n; ++j) {
    switch (kind) {
      case Mapping::JordanWigner:
        cols[j].set(j);
        break;
      case Mapping::Parity:
        for (std::size_t i = j; i < n; ++i) cols[j].set(i);
        break;
      case Mapping::BravyiKitaev:
        // Stored bit i holds occupations (i - lowbit(i + 1), i]; column j
        // collects every i whose range covers j.
        for (std::size_t i = j; i < n; ++i) {
          const std::size_t low = (i + 1) & (~(i + 1) + 1);
          if (i + 1 - low <= j) cols[j].set(i);
        }
        break;
    }
  }
  return cols;
}

}  // namespace

Mapping parse_mapping(std::string_view name) {
  if (name == "jw" || name == "jordan_wigner" || name == "jordan-wigner") return Mapping::JordanWigner;
  if (name == "parity") return Mapping::Parity;
  if (name == "bk" || name == "bravyi_kitaev" || name == "bravyi-kitaev") return Mapping::BravyiKitaev;
  throw ConfigurationError("unknown mapping '" + std::string(name) + "' (expected jw, parity, or bk)");
}

std::string to_string(Mapping m) {
  switch (m) {
    case Mapping::JordanWigner:
      return "jw";
    case Mapping::Parity:
      return "parity";
    case Mapping::BravyiKitaev:
      return "bk";
  }
  return "?";
}

ModeOrder parse_mode_order(std::string_view name) {
  if (name == "blocked") return ModeOrder::Blocked;
  if (name == "interleaved") return ModeOrder::Interleaved;
  throw ConfigurationError("unknown mode order '" + std::string(name) + "' (expected blocked or interleaved)");
}

EncodingSpec EncodingSpec::make(Mapping kind, std::size_t n_modes, ModeOrder order) {
  EncodingSpec s{kind, n_modes, std::vector<std::size_t>(n_modes)};
  const std::size_t n_spatial = n_modes / 2;
  for (std::size_t m = 0; m < n_modes; ++m) {
    if (order == ModeOrder::Blocked) {
      s.mode_order[m] = m;
    } else {
      if (n_modes % 2 != 0) throw ConfigurationError("interleaved order needs an even mode count");
      s.mode_order[m] = m < n_spatial ? 2 * m : 2 * (m - n_spatial) + 1;
    }
  }
  return s;
}

Encoding::Encoding(EncodingSpec spec) : spec_(std::move(spec)) {
  const std::size_t n = spec_.n_modes;
  if (spec_.mode_order.empty() && n > 0) spec_.mode_order = EncodingSpec::make(spec_.kind, n).mode_order;
  if (spec_.mode_order.size() != n) throw ConfigurationError("mode order length differs from mode count");
  std::vector<bool> seen(n, false);
  position_spin_.assign(n, Spin::Alpha);
  const std::size_t n_alpha = (n + 1) / 2;
  for (std::size_t m = 0; m < n; ++m) {
    const std::size_t pos = spec_.mode_order[m];
    if (pos >= n || seen[pos]) throw ConfigurationError("mode order is not a permutation");
    seen[pos] = true;
    position_spin_[pos] = m < n_alpha ? Spin::Alpha : Spin::Beta;
  }

  columns_ = build_columns(spec_.kind, n);
  occupation_rows_ = invert_columns(columns_);

  creation_.reserve(n);
  annihilation_.reserve(n);
  Bits below(n);
  for (std::size_t j = 0; j < n; ++j) {
    const PauliString flip(columns_[j], Bits(n), 0.5);
    const PauliString sign(Bits(n), below);
    const PauliString gate(Bits(n), occupation_rows_[j]);
    const PauliString base = multiply(flip, sign);
    const PauliString gated = multiply(multiply(flip, gate), sign);
    PauliSum up(n), down(n);
    up.add(base);
    up.add(gated);
    down.add(base);
    down.add(gated.with_coeff(-gated.coeff()));
    creation_.push_back(std::move(up));
    annihilation_.push_back(std::move(down));
    below ^= occupation_rows_[j];
  }
}

const PauliSum& Encoding::ladder(std::size_t mode, bool dagger) const {
  if (mode >= spec_.n_modes) throw RangeError("mode " + std::to_string(mode) + " out of range");
  const std::size_t pos = spec_.mode_order[mode];
  return dagger ? creation_[pos] : annihilation_[pos];
}

PauliSum Encoding::encode(const LadderTerm& term) const {
  PauliSum acc(n_qubits());
  acc.add(PauliString(n_qubits(), term.coeff));
  for (const auto& f : term.factors) acc = acc * ladder(f.mode, f.dagger);
  return acc;
}

PauliSum Encoding::encode(const FermionOperator& op) const {
  if (op.n_modes() > spec_.n_modes) throw RangeError("operator has more modes than the encoding");
  PauliSum out(n_qubits());
  for (const auto& t : op.terms()) out.add(encode(t));
  return out;
}

Bits Encoding::decode_occupations(const Bits& stored) const {
  Bits n(spec_.n_modes);
  for (std::size_t j = 0; j < spec_.n_modes; ++j) {
    if (and_popcount(occupation_rows_[j], stored) & 1u) n.set(j);
  }
  return n;
}

Bits Encoding::encode_occupations(const Bits& occupations) const {
  Bits q(spec_.n_modes);
  for (auto j : occupations.indices()) q ^= columns_[j];
  return q;
}

int Encoding::particle_number(const Bits& stored) const {
  return static_cast<int>(decode_occupations(stored).popcount());
}

int Encoding::twice_sz(const Bits& stored) const {
  int s = 0;
  for (auto j : decode_occupations(stored).indices()) s += position_spin_[j] == Spin::Alpha ? 1 : -1;
  return s;
}

PauliSum encode(const FermionOperator& op, const EncodingSpec& spec) { return Encoding(spec).encode(op); }

SectorLabelFunctions sector_label_functions(const EncodingSpec& spec) {
  auto enc = std::make_shared<const Encoding>(spec);
  return {[enc](const Bits& b) { return enc->particle_number(b); },
          [enc](const Bits& b) { return enc->twice_sz(b); }};
}

}  // namespace spt
