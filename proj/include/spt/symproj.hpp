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
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spt/bits.hpp"
#include "spt/encode.hpp"
#include "spt/pauli.hpp"

namespace spt {

enum class Symmetry { N, Sz, S2 };
using SymmetrySet = std::vector<Symmetry>;

/// Accepts "none", "n", "sz", "s2" joined by ',' or '+'.
SymmetrySet parse_symmetries(std::string_view text);
/// Canonical text: "none", "n", "sz", "n,sz".
std::string to_string(const SymmetrySet& syms);

struct SupportDecomposition {
  std::vector<std::size_t> support;
  Bits z_tail;
  /// Letters of the string on `support`, in support order.
  PauliString local;
};

SupportDecomposition decompose_support(const PauliString& p);

using EntryKey = std::pair<Bits, Bits>;

/// An operator written as sum_{(r,c)} a_{rc} |r><c| on `support`, times the
/// product of Z over `z_tail`, times identity elsewhere. Row and column bits
/// are indexed by position in `support`.
struct ProjectedOperator {
  std::size_t n_qubits = 0;
  std::vector<std::size_t> support;
  Bits z_tail;
  std::map<EntryKey, cplx> entries;

  bool empty() const { return entries.empty(); }
  cplx entry(std::string_view row, std::string_view col) const;
};

/// Block-diagonal restriction of operators onto the sectors of the chosen
/// diagonal symmetries, with sector labels read through an encoding.
class Projector {
 public:
  /// Throws UnsupportedSymmetryError for S2.
  Projector(Encoding encoding, SymmetrySet syms);

  const Encoding& encoding() const { return enc_; }
  const SymmetrySet& symmetries() const { return syms_; }

  /// Whether flipping `flip` stored bits of `stored` keeps every sector label.
  bool conserves(const Bits& flip, const Bits& stored) const;

  ProjectedOperator project(const PauliString& p) const;
  ProjectedOperator project_sum(const PauliSum& s) const;

  /// Diagonal operator g with A g equal to the projection of any A whose
  /// strings all flip exactly the stored bits `flip`.
  PauliSum filter(const Bits& flip) const;
  PauliSum project_pauli(const PauliString& p) const;
  PauliSum project_pauli(const PauliSum& s) const;

 private:
  struct FlipInfo {
    std::vector<std::size_t> changed;  // encoded positions whose occupation flips
    Bits region;                       // stored bits fixing those occupations, plus the flip
  };
  FlipInfo flip_info(const Bits& flip) const;
  bool keeps(const FlipInfo& info, const Bits& stored) const;

  Encoding enc_;
  SymmetrySet syms_;
  bool use_n_ = false;
  bool use_sz_ = false;
};

/// Jordan-Wigner projection with the blocked spin layout on p's register.
ProjectedOperator project(const PauliString& p, const SymmetrySet& syms);
ProjectedOperator project_sum(const PauliSum& s, const SymmetrySet& syms);

}  // namespace spt
