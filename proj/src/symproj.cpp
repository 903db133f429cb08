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

#include "spt/symproj.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "spt/errors.hpp"

namespace spt {
namespace {

constexpr std::size_t kMaxRegion = 24;

Bits restrict_to(const Bits& full, const std::vector<std::size_t>& support) {
  Bits out(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (full.get(support[i])) out.set(i);
  }
  return out;
}

Bits widen(const Bits& local, const std::vector<std::size_t>& support, std::size_t n) {
  Bits out(n);
  for (auto i : local.indices()) out.set(support[i]);
  return out;
}

}  // namespace

SymmetrySet parse_symmetries(std::string_view text) {
  SymmetrySet out;
  std::string token;
  auto flush = [&] {
    if (token.empty() || token == "none") {
    } else if (token == "n") {
      out.push_back(Symmetry::N);
    } else if (token == "sz") {
      out.push_back(Symmetry::Sz);
    } else if (token == "s2") {
      out.push_back(Symmetry::S2);
    } else {
      throw ConfigurationError("unknown symmetry '" + token + "' (expected n, sz, or none)");
    }
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == '+') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      token.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
  }
  flush();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const SymmetrySet& syms) {
  if (syms.empty()) return "none";
  std::string out;
  for (auto s : syms) {
    if (!out.empty()) out += ",";
    out += s == Symmetry::N ? "n" : s == Symmetry::Sz ? "sz" : "s2";
  }
  return out;
}

SupportDecomposition decompose_support(const PauliString& p) {
  SupportDecomposition d;
  d.support = p.x_mask().indices();
  d.z_tail = p.z_mask() & ~p.x_mask();
  d.local = PauliString(restrict_to(p.x_mask(), d.support), restrict_to(p.z_mask(), d.support), p.coeff());
  return d;
}

cplx ProjectedOperator::entry(std::string_view row, std::string_view col) const {
  auto it = entries.find({Bits::from_string(row), Bits::from_string(col)});
  return it == entries.end() ? cplx{} : it->second;
}

Projector::Projector(Encoding encoding, SymmetrySet syms) : enc_(std::move(encoding)), syms_(std::move(syms)) {
  for (auto s : syms_) {
    if (s == Symmetry::S2) throw UnsupportedSymmetryError("S2 is not diagonal in the computational basis");
    if (s == Symmetry::N) use_n_ = true;
    if (s == Symmetry::Sz) use_sz_ = true;
  }
}

Projector::FlipInfo Projector::flip_info(const Bits& flip) const {
  if (flip.size() != enc_.n_qubits()) throw DimensionError("string size differs from the encoding");
  FlipInfo info{{}, flip};
  for (std::size_t j = 0; j < enc_.n_qubits(); ++j) {
    if (and_popcount(enc_.occupation_row(j), flip) & 1u) {
      info.changed.push_back(j);
      info.region |= enc_.occupation_row(j);
    }
  }
  return info;
}

bool Projector::keeps(const FlipInfo& info, const Bits& stored) const {
  int dn = 0, dsz = 0;
  for (auto j : info.changed) {
    const int step = (and_popcount(enc_.occupation_row(j), stored) & 1u) ? -1 : 1;
    dn += step;
    dsz += enc_.spin_at(j) == Spin::Alpha ? step : -step;
  }
  return (!use_n_ || dn == 0) && (!use_sz_ || dsz == 0);
}

bool Projector::conserves(const Bits& flip, const Bits& stored) const { return keeps(flip_info(flip), stored); }

ProjectedOperator Projector::project(const PauliString& p) const {
  PauliSum s(p.n_qubits());
  s.add(p);
  if (s.empty()) {
    ProjectedOperator out;
    out.n_qubits = p.n_qubits();
    out.z_tail = Bits(p.n_qubits());
    out.support = p.is_diagonal() ? p.z_mask().indices() : flip_info(p.x_mask()).region.indices();
    return out;
  }
  return project_sum(s);
}

ProjectedOperator Projector::project_sum(const PauliSum& s) const {
  const std::size_t n = s.n_qubits();
  ProjectedOperator out;
  out.n_qubits = n;
  out.z_tail = Bits(n);
  if (s.empty()) return out;

  const auto strings = s.strings();
  std::vector<FlipInfo> infos;
  Bits region(n);
  for (const auto& t : strings) {
    infos.push_back(flip_info(t.x_mask()));
    region |= t.is_diagonal() ? t.z_mask() : infos.back().region;
  }
  if (strings.size() > 1) {
    const Bits first_z = strings.front().z_mask();
    for (const auto& t : strings) region |= (t.z_mask() ^ first_z) & ~region;
  }
  out.z_tail = strings.front().z_mask() & ~region;
  out.support = region.indices();
  if (out.support.size() > kMaxRegion) throw DimensionError("projection support too large for entry form");

  const std::size_t m = out.support.size();
  for (std::size_t t = 0; t < strings.size(); ++t) {
    const auto& str = strings[t];
    const PauliString local(restrict_to(str.x_mask(), out.support), restrict_to(str.z_mask(), out.support),
                            str.coeff());
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << m); ++v) {
      const Bits col = Bits::from_uint(m, v);
      if (!str.is_diagonal() && !keeps(infos[t], widen(col, out.support, n))) continue;
      const auto act = basis_action(local, col);
      out.entries[{act.out, col}] += act.amplitude;
    }
  }
  std::erase_if(out.entries, [](const auto& kv) { return std::abs(kv.second) < kPruneTolerance; });
  return out;
}

PauliSum Projector::filter(const Bits& flip) const {
  const std::size_t n = enc_.n_qubits();
  PauliSum out(n);
  const auto info = flip_info(flip);
  const std::size_t k = info.changed.size();
  if (!use_n_ && !use_sz_) {
    out.add(PauliString(n));
    return out;
  }
  if (k > 20) throw DimensionError("too many occupation changes for a symmetry filter");

  const std::size_t size = std::size_t{1} << k;
  std::vector<double> g(size);
  for (std::size_t v = 0; v < size; ++v) {
    int dn = 0, dsz = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const int step = ((v >> i) & 1u) ? -1 : 1;
      dn += step;
      dsz += enc_.spin_at(info.changed[i]) == Spin::Alpha ? step : -step;
    }
    g[v] = ((!use_n_ || dn == 0) && (!use_sz_ || dsz == 0)) ? 1.0 : 0.0;
  }
  // In-place Walsh-Hadamard transform; coefficient S multiplies prod_{i in S} (-1)^{n_i}.
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = g[j], b = g[j + h];
        g[j] = a + b;
        g[j + h] = a - b;
      }
    }
  }
  for (std::size_t v = 0; v < size; ++v) {
    const double c = g[v] / static_cast<double>(size);
    if (std::abs(c) < kPruneTolerance) continue;
    Bits z(n);
    for (std::size_t i = 0; i < k; ++i) {
      if ((v >> i) & 1u) z ^= enc_.occupation_row(info.changed[i]);
    }
    out.add(PauliString(Bits(n), z, c));
  }
  return out;
}

PauliSum Projector::project_pauli(const PauliString& p) const {
  PauliSum s(p.n_qubits());
  s.add(p);
  return s * filter(p.x_mask());
}

PauliSum Projector::project_pauli(const PauliSum& s) const {
  std::map<Bits, PauliSum> by_flip;
  for (const auto& [key, c] : s.terms()) {
    auto [it, inserted] = by_flip.try_emplace(key.x, s.n_qubits());
    it->second.add(PauliString(key.x, key.z, c));
  }
  PauliSum out(s.n_qubits());
  for (const auto& [flip, part] : by_flip) out.add(part * filter(flip));
  return out;
}

ProjectedOperator project(const PauliString& p, const SymmetrySet& syms) {
  return Projector(Encoding(EncodingSpec::make(Mapping::JordanWigner, p.n_qubits())), syms).project(p);
}

ProjectedOperator project_sum(const PauliSum& s, const SymmetrySet& syms) {
  return Projector(Encoding(EncodingSpec::make(Mapping::JordanWigner, s.n_qubits())), syms).project_sum(s);
}

}  // namespace spt
