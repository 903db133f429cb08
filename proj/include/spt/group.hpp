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
#include <cstdint>
#include <utility>
#include <vector>

#include "spt/pauli.hpp"

namespace spt {

/// Conflict graph: an edge joins two strings that do not commute qubit-wise.
class CompatibilityGraph {
 public:
  CompatibilityGraph() = default;
  explicit CompatibilityGraph(std::vector<PauliString> vertices);

  std::size_t size() const { return vertices_.size(); }
  const std::vector<PauliString>& vertices() const { return vertices_; }
  bool conflict(std::size_t i, std::size_t j) const { return (rows_[i][j >> 6] >> (j & 63)) & 1u; }
  std::size_t degree(std::size_t i) const { return degrees_[i]; }
  std::size_t edge_count() const;

 private:
  std::vector<PauliString> vertices_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> degrees_;
};

CompatibilityGraph build_graph(const std::vector<PauliString>& strings);

struct Grouping {
  std::vector<std::vector<std::size_t>> groups;

  std::size_t circuit_count() const { return groups.size(); }
  friend bool operator==(const Grouping&, const Grouping&) = default;
};

/// Sequential coloring of the conflict graph: vertices by descending degree,
/// ties by ascending index, each taking the lowest color free of its neighbours.
Grouping clique_cover(const CompatibilityGraph& g);

/// Same coloring as clique_cover without materializing the edge set, for
/// string sets too large for a dense adjacency matrix.
Grouping group_qubitwise(const std::vector<PauliString>& strings);

/// Strings with every identity string removed.
std::vector<PauliString> without_identity(const std::vector<PauliString>& strings);

/// Grouped circuit count of a measurement set; the identity needs no circuit.
std::size_t circuit_count(const std::vector<PauliString>& strings);

/// Single string whose measurement basis covers every member. Throws
/// DomainError when two members disagree on a qubit.
PauliString measurement_basis(const std::vector<PauliString>& members);

struct ScalingFit {
  std::vector<std::pair<double, double>> points;
  double exponent = 0.0;
  double prefactor = 0.0;
};

/// Least-squares power law circuits = prefactor * r^exponent on log-log axes.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace spt
