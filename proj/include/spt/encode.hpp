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

#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "spt/bits.hpp"
#include "spt/fermion.hpp"
#include "spt/pauli.hpp"

namespace spt {

enum class Mapping { JordanWigner, Parity, BravyiKitaev };
enum class ModeOrder { Blocked, Interleaved };

/// Accepts "jw", "parity", "bk" and the long names.
Mapping parse_mapping(std::string_view name);
std::string to_string(Mapping m);
ModeOrder parse_mode_order(std::string_view name);

struct EncodingSpec {
  Mapping kind = Mapping::JordanWigner;
  std::size_t n_modes = 0;
  /// mode_order[m] is the encoded position (qubit) of blocked mode m.
  std::vector<std::size_t> mode_order;

  static EncodingSpec make(Mapping kind, std::size_t n_modes, ModeOrder order = ModeOrder::Blocked);
};

/// A linear fermion-to-qubit encoding: stored qubit bits q = B n over GF(2)
/// for occupations n indexed by encoded position.
///
/// Jordan-Wigner has B = I, the parity encoding stores prefix parities, and
/// Bravyi-Kitaev stores the Fenwick-tree partial sums. Ladder operators follow
/// from B alone: a creation operator flips the stored bits in column j of B,
/// is gated on the decoded occupation n_j = 0, and picks up the parity of the
/// decoded occupations below j.
class Encoding {
 public:
  explicit Encoding(EncodingSpec spec);

  const EncodingSpec& spec() const { return spec_; }
  std::size_t n_qubits() const { return spec_.n_modes; }

  /// Encoded ladder operator for blocked mode `mode`.
  const PauliSum& ladder(std::size_t mode, bool dagger) const;
  PauliSum encode(const FermionOperator& op) const;
  PauliSum encode(const LadderTerm& term) const;

  /// Stored bits flipped when the occupation at `position` changes.
  const Bits& update_column(std::size_t position) const { return columns_[position]; }
  /// n_position = parity(occupation_row(position) & stored).
  const Bits& occupation_row(std::size_t position) const { return occupation_rows_[position]; }

  Bits decode_occupations(const Bits& stored) const;
  Bits encode_occupations(const Bits& occupations) const;

  Spin spin_at(std::size_t position) const { return position_spin_[position]; }

  int particle_number(const Bits& stored) const;
  /// Alpha count minus beta count.
  int twice_sz(const Bits& stored) const;

 private:
  EncodingSpec spec_;
  std::vector<Bits> columns_;
  std::vector<Bits> occupation_rows_;
  std::vector<Spin> position_spin_;
  std::vector<PauliSum> creation_;
  std::vector<PauliSum> annihilation_;
};

/// Throws ConfigurationError for an invalid mode order.
PauliSum encode(const FermionOperator& op, const EncodingSpec& spec);

struct SectorLabelFunctions {
  std::function<int(const Bits&)> particle_number;
  std::function<int(const Bits&)> twice_sz;
};

SectorLabelFunctions sector_label_functions(const EncodingSpec& spec);

}  // namespace spt
