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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spt/bits.hpp"

namespace spt {

using cplx = std::complex<double>;

inline constexpr double kPruneTolerance = 1e-12;

enum class PauliLetter : unsigned char { I, X, Y, Z };

char to_char(PauliLetter p);

/// Tensor product of single-qubit Paulis times a complex coefficient.
///
/// Qubit q carries X when only x_mask[q] is set, Z when only z_mask[q] is
/// set, and Y when both are set. The coefficient multiplies the operator
/// built from the letters {I, X, Y, Z} themselves, so "Y" has matrix
/// [[0, -i], [i, 0]] with no extra phase hidden in the mask encoding.
class PauliString {
 public:
  PauliString() = default;
  /// Identity on `n_qubits`.
  explicit PauliString(std::size_t n_qubits, cplx coeff = 1.0);
  PauliString(Bits x_mask, Bits z_mask, cplx coeff = 1.0);

  /// Parses letters such as "XIZY"; the leftmost letter acts on qubit 1.
  static PauliString from_letters(std::string_view letters, cplx coeff = 1.0);

  std::size_t n_qubits() const { return x_.size(); }
  const Bits& x_mask() const { return x_; }
  const Bits& z_mask() const { return z_; }
  cplx coeff() const { return coeff_; }

  PauliLetter letter(std::size_t q) const;
  std::string letters() const;
  std::size_t y_count() const { return and_popcount(x_, z_); }
  /// Number of non-identity letters.
  std::size_t weight() const { return (x_ | z_).popcount(); }
  bool is_diagonal() const { return x_.none(); }

  PauliString with_coeff(cplx c) const { return PauliString(x_, z_, c); }

  /// Equality of letters; coefficients are ignored.
  bool same_letters(const PauliString& o) const { return x_ == o.x_ && z_ == o.z_; }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  Bits x_;
  Bits z_;
  cplx coeff_ = 1.0;
};

/// Product p*q with the accumulated phase folded into the coefficient.
PauliString multiply(const PauliString& p, const PauliString& q);

/// Letter-by-letter compatibility: on every qubit where both strings are
/// non-identity, the letters agree.
bool qubitwise_commutes(const PauliString& p, const PauliString& q);

/// Full operator commutation (ignores coefficients).
bool commutes(const PauliString& p, const PauliString& q);

struct BasisAction {
  Bits out;
  cplx amplitude;
};

/// Image of the computational basis state |b>: P|b> = amplitude |out>.
BasisAction basis_action(const PauliString& p, const Bits& b);

/// Ordering key for Pauli letters without a coefficient.
struct PauliKey {
  Bits x;
  Bits z;
  friend bool operator==(const PauliKey&, const PauliKey&) = default;
  friend auto operator<=>(const PauliKey&, const PauliKey&) = default;
};

inline PauliKey key_of(const PauliString& p) { return {p.x_mask(), p.z_mask()}; }

/// Linear combination of Pauli strings with unique keys.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t n_qubits, double prune_tol = kPruneTolerance)
      : n_qubits_(n_qubits), prune_tol_(prune_tol) {}

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  double prune_tolerance() const { return prune_tol_; }

  void add(const PauliString& p);
  void add(const PauliSum& s);
  PauliSum& operator+=(const PauliSum& s) {
    add(s);
    return *this;
  }
  PauliSum& operator*=(cplx c);

  /// Coefficient of the given letters, zero when absent.
  cplx coeff(const PauliKey& k) const;
  cplx coeff(std::string_view letters) const;

  const std::map<PauliKey, cplx>& terms() const { return terms_; }
  /// Terms as strings in key order.
  std::vector<PauliString> strings() const;

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(PauliSum a, cplx c) { return a *= c; }
  friend PauliSum operator*(cplx c, PauliSum a) { return a *= c; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

  /// Equal keys and coefficients within `tol`.
  bool approx_equal(const PauliSum& o, double tol = 1e-12) const;

 private:
  void prune(std::map<PauliKey, cplx>::iterator it);

  std::size_t n_qubits_ = 0;
  double prune_tol_ = kPruneTolerance;
  std::map<PauliKey, cplx> terms_;
};

}  // namespace spt
