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

#include "spt/fermion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "spt/errors.hpp"

namespace spt {
namespace {

// Strictly increasing k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::string repeat(const char* s, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += s;
  return out;
}

}  // namespace

LadderTerm LadderTerm::adjoint() const {
  LadderTerm t;
  t.coeff = std::conj(coeff);
  t.factors.reserve(factors.size());
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) t.factors.push_back({it->mode, !it->dagger});
  return t;
}

void FermionOperator::add_term(LadderTerm term) {
  for (const auto& f : term.factors) {
    if (f.mode >= n_modes_) {
      throw RangeError("mode " + std::to_string(f.mode) + " out of range for " + std::to_string(n_modes_) +
                       " modes");
    }
  }
  terms_.push_back(std::move(term));
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(n_modes_);
  for (const auto& t : terms_) out.terms_.push_back(t.adjoint());
  return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  if (o.n_modes_ != n_modes_) throw DimensionError("fermion operators act on different mode counts");
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

FermionOperator& FermionOperator::operator*=(cplx c) {
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool FermionOperator::structurally_equal(const FermionOperator& o, double tol) const {
  if (n_modes_ != o.n_modes_ || terms_.size() != o.terms_.size()) return false;
  std::vector<bool> used(o.terms_.size(), false);
  for (const auto& t : terms_) {
    bool found = false;
    for (std::size_t j = 0; j < o.terms_.size(); ++j) {
      if (!used[j] && o.terms_[j].factors == t.factors && std::abs(o.terms_[j].coeff - t.coeff) <= tol) {
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool RdmElementSpec::pauli_excluded() const {
  auto repeated = [](const std::vector<SpinOrbital>& v) {
    std::set<SpinOrbital> seen(v.begin(), v.end());
    return seen.size() != v.size();
  };
  return repeated(upper) || repeated(lower);
}

FermionOperator rdm_element_operator(const RdmElementSpec& spec, std::size_t n_spatial) {
  if (spec.upper.size() != spec.lower.size()) {
    throw DimensionError("upper and lower index tuples differ in length");
  }
  FermionOperator op(2 * n_spatial);
  LadderTerm term;
  for (const auto& so : spec.upper) {
    if (so.spatial >= n_spatial) throw RangeError("spin orbital " + to_string(so) + " out of range");
    term.factors.push_back({blocked_mode(so, n_spatial), true});
  }
  for (auto it = spec.lower.rbegin(); it != spec.lower.rend(); ++it) {
    if (it->spatial >= n_spatial) throw RangeError("spin orbital " + to_string(*it) + " out of range");
    term.factors.push_back({blocked_mode(*it, n_spatial), false});
  }
  op.add_term(std::move(term));
  return op;
}

HermitianComponents hermitian_components(const FermionOperator& op) {
  const FermionOperator adj = op.adjoint();
  if (op.structurally_equal(adj)) return {op, FermionOperator(op.n_modes())};
  return {op + adj, cplx(0, 1) * (op - adj)};
}

SpinClass classify(const RdmElementSpec& spec) {
  std::size_t upper_count[2] = {0, 0};
  std::size_t lower_count[2] = {0, 0};
  for (const auto& so : spec.upper) ++upper_count[static_cast<int>(so.spin)];
  for (const auto& so : spec.lower) ++lower_count[static_cast<int>(so.spin)];

  if (upper_count[0] != lower_count[0] || upper_count[1] != lower_count[1]) {
    SpinClass c;
    c.zero_class = true;
    c.label = repeat("α", upper_count[0] + lower_count[0]) + repeat("β", upper_count[1] + lower_count[1]);
    return c;
  }

  const std::set<SpinOrbital> up(spec.upper.begin(), spec.upper.end());
  const std::set<SpinOrbital> lo(spec.lower.begin(), spec.lower.end());
  std::size_t shared[2] = {0, 0};
  for (const auto& so : up) {
    if (lo.contains(so)) ++shared[static_cast<int>(so.spin)];
  }
  std::set<SpinOrbital> sites = up;
  sites.insert(lo.begin(), lo.end());

  SpinClass c;
  c.label = repeat("αα", shared[0]) + repeat("ᾱᾱ", upper_count[0] - shared[0]) + repeat("ββ", shared[1]) +
            repeat("β̄β̄", upper_count[1] - shared[1]);
  c.q_sites = sites.size();
  return c;
}

std::vector<RdmElementSpec> enumerate_rdm(std::size_t k, std::size_t n_spatial) {
  if (k < 1 || k > 3) throw RangeError("RDM order must be 1, 2, or 3");
  if (n_spatial < k) throw RangeError("need at least k spatial orbitals");
  const auto tuples = combinations(2 * n_spatial, k);
  std::vector<RdmElementSpec> out;
  out.reserve(tuples.size() * (tuples.size() + 1) / 2);
  auto orbitals = [&](const std::vector<std::size_t>& modes) {
    std::vector<SpinOrbital> v;
    for (auto m : modes) v.push_back(blocked_orbital(m, n_spatial));
    return v;
  };
  for (std::size_t a = 0; a < tuples.size(); ++a) {
    for (std::size_t b = a; b < tuples.size(); ++b) {
      out.push_back({orbitals(tuples[a]), orbitals(tuples[b])});
    }
  }
  return out;
}

std::string to_string(const SpinOrbital& so) {
  return std::to_string(so.spatial) + (so.spin == Spin::Alpha ? "α" : "β");
}

}  // namespace spt
