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

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spt/encode.hpp"
#include "spt/fermion.hpp"
#include "spt/pauli.hpp"
#include "spt/symproj.hpp"

namespace spt {

inline constexpr double kIndependenceTolerance = 1e-9;

template <class Key>
struct VectorSet {
  std::vector<Key> coordinates;
  std::vector<Eigen::VectorXcd> vectors;
};

/// Entry coordinates; every operator must share one support and Z tail.
VectorSet<EntryKey> vectorize(const std::vector<ProjectedOperator>& ops);
/// Pauli-string coordinates.
VectorSet<PauliKey> vectorize(const std::vector<PauliSum>& ops);

/// Default scan order: fewer Y letters first, then letters in I < X < Y < Z order.
std::vector<std::size_t> selection_order(const std::vector<PauliString>& candidates);

/// Greedy scan in `order`; keeps a candidate whose component orthogonal to the
/// kept span exceeds tol times its norm.
std::vector<std::size_t> select_independent(const std::vector<Eigen::VectorXcd>& candidates,
                                            const std::vector<std::size_t>& order,
                                            double tol = kIndependenceTolerance);

struct Solution {
  Eigen::VectorXcd x;
  double residual = 0.0;
};

/// Least squares for sum_j x_j columns[j] = target. Throws NotInSpanError when
/// the relative residual exceeds tol.
Solution solve(const std::vector<Eigen::VectorXcd>& columns, const Eigen::VectorXcd& target,
               double tol = kIndependenceTolerance);

struct ReducedBasis {
  std::vector<PauliString> measurements;
  /// One row per target, aligned with `measurements`.
  std::vector<std::vector<cplx>> coefficients;
  double residual = 0.0;

  friend bool operator==(const ReducedBasis&, const ReducedBasis&) = default;
};

/// Measurement strings selected for the targets without solving for coefficients.
std::vector<PauliString> select_measurements(const std::vector<FermionOperator>& targets, const Projector& proj);

ReducedBasis reduce_measurements(const std::vector<FermionOperator>& targets, const Projector& proj);
ReducedBasis reduce_measurements(const std::vector<FermionOperator>& targets, const EncodingSpec& enc,
                                 const SymmetrySet& syms);

/// Distinct strings of the encoded targets, sorted by selection order.
std::vector<PauliString> naive_measurements(const std::vector<FermionOperator>& targets, const Encoding& enc);

struct CountTableRow {
  std::size_t k = 0;
  std::string spin_class;
  std::optional<std::size_t> q_sites;
  std::optional<std::size_t> naive;
  std::size_t reduced = 0;

  friend bool operator==(const CountTableRow&, const CountTableRow&) = default;
};

/// One row per spin class of k-RDM elements, each counted on a representative
/// element using both Hermitian components.
std::vector<CountTableRow> count_table(std::size_t k, Mapping mapping, const SymmetrySet& syms,
                                       ModeOrder order = ModeOrder::Blocked);

/// Representative element of a spin class: n_alpha, n_beta creation indices of
/// which p_alpha, p_beta are excitations.
RdmElementSpec class_representative(std::size_t n_alpha, std::size_t n_beta, std::size_t p_alpha,
                                    std::size_t p_beta);

struct MeasurementSets {
  std::size_t elements = 0;
  std::vector<PauliString> naive;
  std::vector<PauliString> reduced;
};

/// Naive and reduced measurement strings for every k-RDM element outside the
/// zero class, merged across elements.
MeasurementSets rdm_measurement_sets(std::size_t k, std::size_t n_spatial, const Projector& proj);

}  // namespace spt
