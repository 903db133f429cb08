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

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace spt {

using cplx = std::complex<double>;

enum class Spin : unsigned char { Alpha, Beta };

struct SpinOrbital {
  std::size_t spatial = 0;
  Spin spin = Spin::Alpha;

  friend bool operator==(const SpinOrbital&, const SpinOrbital&) = default;
  friend auto operator<=>(const SpinOrbital&, const SpinOrbital&) = default;
};

/// Blocked spin-orbital layout: all alpha orbitals in ascending spatial
/// order, then all beta orbitals.
inline std::size_t blocked_mode(const SpinOrbital& so, std::size_t n_spatial) {
  return so.spatial + (so.spin == Spin::Beta ? n_spatial : 0);
}
inline SpinOrbital blocked_orbital(std::size_t mode, std::size_t n_spatial) {
  return mode < n_spatial ? SpinOrbital{mode, Spin::Alpha} : SpinOrbital{mode - n_spatial, Spin::Beta};
}

struct LadderFactor {
  std::size_t mode = 0;
  bool dagger = false;

  friend bool operator==(const LadderFactor&, const LadderFactor&) = default;
};

/// Ordered product of ladder operators, applied right to left.
struct LadderTerm {
  std::vector<LadderFactor> factors;
  cplx coeff = 1.0;

  LadderTerm adjoint() const;
};

/// Sum of ladder-operator products. Terms are kept verbatim: no normal
/// ordering or anticommutator simplification is applied.
class FermionOperator {
 public:
  FermionOperator() = default;
  explicit FermionOperator(std::size_t n_modes) : n_modes_(n_modes) {}

  std::size_t n_modes() const { return n_modes_; }
  const std::vector<LadderTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Throws RangeError when a mode index is >= n_modes.
  void add_term(LadderTerm term);

  FermionOperator adjoint() const;
  FermionOperator& operator+=(const FermionOperator& o);
  FermionOperator& operator*=(cplx c);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) { return a += b; }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) { return a += b * cplx(-1.0); }
  friend FermionOperator operator*(FermionOperator a, cplx c) { return a *= c; }
  friend FermionOperator operator*(cplx c, FermionOperator a) { return a *= c; }

  /// Same factor sequences with equal coefficients, term by term (order-insensitive).
  bool structurally_equal(const FermionOperator& o, double tol = 1e-12) const;

 private:
  std::size_t n_modes_ = 0;
  std::vector<LadderTerm> terms_;
};

/// One k-RDM element: creation on `upper`, annihilation on `lower`.
struct RdmElementSpec {
  std::vector<SpinOrbital> upper;
  std::vector<SpinOrbital> lower;

  std::size_t order() const { return upper.size(); }
  /// A repeated spin orbital in either tuple makes the element vanish identically.
  bool pauli_excluded() const;
  bool is_diagonal() const { return upper == lower; }
};

/// a+_{u1} ... a+_{uk} a_{lk} ... a_{l1} on 2*n_spatial blocked modes.
FermionOperator rdm_element_operator(const RdmElementSpec& spec, std::size_t n_spatial);

struct HermitianComponents {
  FermionOperator real_part;
  FermionOperator imag_part;
};

/// (T + T^dagger, i(T - T^dagger)); a self-adjoint T gives (T, 0).
HermitianComponents hermitian_components(const FermionOperator& op);

/// Row label of the spin/site count table.
struct SpinClass {
  std::string label;
  /// Distinct spin orbitals touched; empty for zero-class elements.
  std::optional<std::size_t> q_sites;
  bool zero_class = false;

  friend bool operator==(const SpinClass&, const SpinClass&) = default;
};

/// Pairs of equal alpha (beta) orbitals read "αα" ("ββ"); an excitation
/// between two different orbitals reads "ᾱᾱ" ("β̄β̄"). Elements whose alpha or
/// beta count differs between upper and lower tuples are zero-class and are
/// labelled by their spin multiset.
SpinClass classify(const RdmElementSpec& spec);

/// Every k-RDM element up to Hermitian conjugation, zero-class included.
/// Tuples are strictly increasing in blocked mode order.
std::vector<RdmElementSpec> enumerate_rdm(std::size_t k, std::size_t n_spatial);

std::string to_string(const SpinOrbital& so);

}  // namespace spt
