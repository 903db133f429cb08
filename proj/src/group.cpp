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

#include "spt/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spt/errors.hpp"
#include "spt/parallel.hpp"

namespace spt {
namespace {

// Packed (x, z) words for fast pairwise tests.
struct Packed {
  std::size_t words = 0;
  std::vector<std::uint64_t> x, z;

  explicit Packed(const std::vector<PauliString>& strings) {
    if (strings.empty()) return;
    words = strings.front().x_mask().word_count();
    x.reserve(strings.size() * words);
    z.reserve(strings.size() * words);
    for (const auto& s : strings) {
      if (s.x_mask().word_count() != words) throw DimensionError("strings differ in qubit count");
      x.insert(x.end(), s.x_mask().words().begin(), s.x_mask().words().end());
      z.insert(z.end(), s.z_mask().words().begin(), s.z_mask().words().end());
    }
  }

  bool conflict(std::size_t i, std::size_t j) const {
    for (std::size_t w = 0; w < words; ++w) {
      const auto xi = x[i * words + w], zi = z[i * words + w];
      const auto xj = x[j * words + w], zj = z[j * words + w];
      if (((xi ^ xj) | (zi ^ zj)) & (xi | zi) & (xj | zj)) return true;
    }
    return false;
  }
};

std::vector<std::size_t> coloring_order(const std::vector<std::size_t>& degrees) {
  std::vector<std::size_t> order(degrees.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return degrees[a] > degrees[b]; });
  return order;
}

Grouping sorted_groups(std::vector<std::vector<std::size_t>> groups) {
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return {std::move(groups)};
}

}  // namespace

CompatibilityGraph::CompatibilityGraph(std::vector<PauliString> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  const std::size_t words = (n + 63) / 64;
  rows_.assign(n, std::vector<std::uint64_t>(words, 0));
  degrees_.assign(n, 0);
  const Packed packed(vertices_);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && packed.conflict(i, j)) {
        rows_[i][j >> 6] |= std::uint64_t{1} << (j & 63);
        ++degrees_[i];
      }
    }
  });
}

std::size_t CompatibilityGraph::edge_count() const {
  return std::accumulate(degrees_.begin(), degrees_.end(), std::size_t{0}) / 2;
}

CompatibilityGraph build_graph(const std::vector<PauliString>& strings) { return CompatibilityGraph(strings); }

Grouping clique_cover(const CompatibilityGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> degrees(n);
  for (std::size_t i = 0; i < n; ++i) degrees[i] = g.degree(i);
  std::vector<std::size_t> color(n, n);
  std::vector<std::vector<std::size_t>> groups;
  std::vector<char> used;
  for (auto v : coloring_order(degrees)) {
    used.assign(groups.size() + 1, 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (color[u] < n && g.conflict(v, u)) used[color[u]] = 1;
    }
    std::size_t c = 0;
    while (used[c]) ++c;
    color[v] = c;
    if (c == groups.size()) groups.emplace_back();
    groups[c].push_back(v);
  }
  return sorted_groups(std::move(groups));
}

Grouping group_qubitwise(const std::vector<PauliString>& strings) {
  const std::size_t n = strings.size();
  const Packed packed(strings);
  std::vector<std::size_t> degrees(n, 0);
  parallel_for(n, [&](std::size_t i) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n; ++j) d += (i != j && packed.conflict(i, j));
    degrees[i] = d;
  });

  // A vertex joins a color class iff it commutes qubit-wise with every member,
  // which is the same as agreeing with the class's merged letters.
  const std::size_t words = packed.words;
  std::vector<std::uint64_t> class_x, class_z;
  std::vector<std::vector<std::size_t>> groups;
  for (auto v : coloring_order(degrees)) {
    const std::uint64_t* vx = packed.x.data() + v * words;
    const std::uint64_t* vz = packed.z.data() + v * words;
    std::size_t c = 0;
    for (; c < groups.size(); ++c) {
      const std::uint64_t* cx = class_x.data() + c * words;
      const std::uint64_t* cz = class_z.data() + c * words;
      bool ok = true;
      for (std::size_t w = 0; w < words && ok; ++w) {
        ok = !(((vx[w] ^ cx[w]) | (vz[w] ^ cz[w])) & (vx[w] | vz[w]) & (cx[w] | cz[w]));
      }
      if (ok) break;
    }
    if (c == groups.size()) {
      groups.emplace_back();
      class_x.resize(class_x.size() + words, 0);
      class_z.resize(class_z.size() + words, 0);
    }
    groups[c].push_back(v);
    for (std::size_t w = 0; w < words; ++w) {
      class_x[c * words + w] |= vx[w];
      class_z[c * words + w] |= vz[w];
    }
  }
  return sorted_groups(std::move(groups));
}

std::vector<PauliString> without_identity(const std::vector<PauliString>& strings) {
  std::vector<PauliString> out;
  for (const auto& s : strings) {
    if (s.weight() > 0) out.push_back(s);
  }
  return out;
}

std::size_t circuit_count(const std::vector<PauliString>& strings) {
  return group_qubitwise(without_identity(strings)).circuit_count();
}

PauliString measurement_basis(const std::vector<PauliString>& members) {
  if (members.empty()) throw DomainError("empty group has no measurement basis");
  Bits x(members.front().n_qubits()), z(members.front().n_qubits());
  for (const auto& m : members) {
    const PauliString merged(x, z);
    if (!qubitwise_commutes(merged, m)) throw DomainError("group members do not commute qubit-wise");
    x |= m.x_mask();
    z |= m.z_mask();
  }
  return PauliString(x, z);
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("a scaling fit needs at least 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [r, c] : points) {
    if (!(r > 0) || !(c > 0)) throw DomainError("scaling fit needs positive sizes and counts");
    const double lx = std::log(r), ly = std::log(c);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(points.size());
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) throw DomainError("scaling fit needs at least two distinct sizes");
  ScalingFit fit;
  fit.points = points;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.prefactor = std::exp((sy - fit.exponent * sx) / n);
  return fit;
}

}  // namespace spt
