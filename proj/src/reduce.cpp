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

#include "spt/reduce.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "spt/errors.hpp"
#include "spt/parallel.hpp"

namespace spt {
namespace {

struct Block {
  std::vector<PauliString> strings;
  std::vector<PauliSum> projected;
  std::vector<std::size_t> selected;
};

std::set<PauliKey> candidate_keys(const std::vector<FermionOperator>& targets, const Encoding& enc) {
  std::set<PauliKey> keys;
  for (const auto& t : targets) {
    for (const auto& term : t.terms()) {
      const auto encoded = enc.encode(term);
      for (const auto& [key, c] : encoded.terms()) keys.insert(key);
    }
  }
  return keys;
}

std::map<Bits, Block> build_blocks(const std::set<PauliKey>& keys, const Projector& proj) {
  std::map<Bits, Block> blocks;
  for (const auto& key : keys) {
    auto [it, inserted] = blocks.try_emplace(key.x);
    PauliString s(key.x, key.z);
    it->second.projected.push_back(proj.project_pauli(s));
    it->second.strings.push_back(std::move(s));
  }
  for (auto& [flip, block] : blocks) {
    const auto vs = vectorize(block.projected);
    block.selected = select_independent(vs.vectors, selection_order(block.strings));
  }
  return blocks;
}

std::vector<PauliString> sorted_by_policy(std::vector<PauliString> strings) {
  const auto order = selection_order(strings);
  std::vector<PauliString> out;
  out.reserve(strings.size());
  for (auto i : order) out.push_back(std::move(strings[i]));
  return out;
}

std::vector<PauliString> gather(const std::map<Bits, Block>& blocks) {
  std::vector<PauliString> out;
  for (const auto& [flip, block] : blocks) {
    for (auto i : block.selected) out.push_back(block.strings[i]);
  }
  return sorted_by_policy(std::move(out));
}

std::vector<FermionOperator> component_targets(const FermionOperator& op) {
  auto parts = hermitian_components(op);
  std::vector<FermionOperator> out{std::move(parts.real_part)};
  if (!parts.imag_part.empty()) out.push_back(std::move(parts.imag_part));
  return out;
}

}  // namespace

VectorSet<EntryKey> vectorize(const std::vector<ProjectedOperator>& ops) {
  VectorSet<EntryKey> out;
  if (ops.empty()) return out;
  std::set<EntryKey> keys;
  for (const auto& op : ops) {
    if (op.n_qubits != ops.front().n_qubits || op.support != ops.front().support ||
        op.z_tail != ops.front().z_tail) {
      throw DimensionError("projected operators do not share a support");
    }
    for (const auto& [k, v] : op.entries) keys.insert(k);
  }
  out.coordinates.assign(keys.begin(), keys.end());
  std::map<EntryKey, std::size_t> index;
  for (std::size_t i = 0; i < out.coordinates.size(); ++i) index[out.coordinates[i]] = i;
  for (const auto& op : ops) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(keys.size()));
    for (const auto& [k, a] : op.entries) v(static_cast<Eigen::Index>(index[k])) = a;
    out.vectors.push_back(std::move(v));
  }
  return out;
}

VectorSet<PauliKey> vectorize(const std::vector<PauliSum>& ops) {
  VectorSet<PauliKey> out;
  std::set<PauliKey> keys;
  for (const auto& op : ops) {
    for (const auto& [k, v] : op.terms()) keys.insert(k);
  }
  out.coordinates.assign(keys.begin(), keys.end());
  std::map<PauliKey, std::size_t> index;
  for (std::size_t i = 0; i < out.coordinates.size(); ++i) index[out.coordinates[i]] = i;
  for (const auto& op : ops) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(keys.size()));
    for (const auto& [k, a] : op.terms()) v(static_cast<Eigen::Index>(index[k])) = a;
    out.vectors.push_back(std::move(v));
  }
  return out;
}

std::vector<std::size_t> selection_order(const std::vector<PauliString>& candidates) {
  std::vector<std::tuple<std::size_t, std::string, std::size_t>> keyed;
  keyed.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    keyed.emplace_back(candidates[i].y_count(), candidates[i].letters(), i);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::size_t> order;
  order.reserve(keyed.size());
  for (const auto& k : keyed) order.push_back(std::get<2>(k));
  return order;
}

std::vector<std::size_t> select_independent(const std::vector<Eigen::VectorXcd>& candidates,
                                            const std::vector<std::size_t>& order, double tol) {
  std::vector<std::size_t> kept;
  std::vector<Eigen::VectorXcd> basis;
  for (auto idx : order) {
    const auto& v = candidates.at(idx);
    const double norm = v.norm();
    if (norm == 0.0) continue;
    Eigen::VectorXcd r = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) r -= q * q.dot(r);
    }
    const double rn = r.norm();
    if (rn > tol * norm) {
      kept.push_back(idx);
      basis.push_back(r / rn);
    }
  }
  return kept;
}

Solution solve(const std::vector<Eigen::VectorXcd>& columns, const Eigen::VectorXcd& target, double tol) {
  Solution sol;
  sol.x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(columns.size()));
  const double tnorm = target.norm();
  if (tnorm == 0.0) return sol;
  if (columns.empty()) throw NotInSpanError("target is nonzero but no columns were given");
  Eigen::MatrixXcd u(target.size(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != target.size()) throw DimensionError("column length differs from target length");
    u.col(static_cast<Eigen::Index>(j)) = columns[j];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(u);
  sol.x = qr.solve(target);
  sol.residual = (u * sol.x - target).norm() / tnorm;
  if (sol.residual > tol) {
    throw NotInSpanError("target lies outside the candidate span (relative residual " +
                         std::to_string(sol.residual) + ")");
  }
  return sol;
}

std::vector<PauliString> select_measurements(const std::vector<FermionOperator>& targets, const Projector& proj) {
  return gather(build_blocks(candidate_keys(targets, proj.encoding()), proj));
}

ReducedBasis reduce_measurements(const std::vector<FermionOperator>& targets, const Projector& proj) {
  const auto& enc = proj.encoding();
  const auto blocks = build_blocks(candidate_keys(targets, enc), proj);
  ReducedBasis out;
  out.measurements = gather(blocks);
  std::map<PauliKey, std::size_t> position;
  for (std::size_t i = 0; i < out.measurements.size(); ++i) position[key_of(out.measurements[i])] = i;

  for (const auto& t : targets) {
    std::vector<cplx> row(out.measurements.size());
    const PauliSum projected = proj.project_pauli(enc.encode(t));
    std::map<Bits, PauliSum> parts;
    for (const auto& [key, c] : projected.terms()) {
      parts.try_emplace(key.x, projected.n_qubits()).first->second.add(PauliString(key.x, key.z, c));
    }
    for (const auto& [flip, part] : parts) {
      auto it = blocks.find(flip);
      if (it == blocks.end() || it->second.selected.empty()) {
        throw NotInSpanError("no candidate measurement flips the bits " + flip.to_string());
      }
      const Block& block = it->second;
      std::vector<PauliSum> ops{part};
      for (auto i : block.selected) ops.push_back(block.projected[i]);
      auto vs = vectorize(ops);
      const Eigen::VectorXcd m = vs.vectors.front();
      vs.vectors.erase(vs.vectors.begin());
      const auto sol = solve(vs.vectors, m);
      out.residual = std::max(out.residual, sol.residual);
      for (std::size_t j = 0; j < block.selected.size(); ++j) {
        row[position.at(key_of(block.strings[block.selected[j]]))] = sol.x(static_cast<Eigen::Index>(j));
      }
    }
    out.coefficients.push_back(std::move(row));
  }
  return out;
}

ReducedBasis reduce_measurements(const std::vector<FermionOperator>& targets, const EncodingSpec& enc,
                                 const SymmetrySet& syms) {
  return reduce_measurements(targets, Projector(Encoding(enc), syms));
}

std::vector<PauliString> naive_measurements(const std::vector<FermionOperator>& targets, const Encoding& enc) {
  std::set<PauliKey> keys;
  for (const auto& t : targets) {
    const auto encoded = enc.encode(t);
    for (const auto& [key, c] : encoded.terms()) keys.insert(key);
  }
  std::vector<PauliString> out;
  for (const auto& k : keys) out.emplace_back(k.x, k.z);
  return sorted_by_policy(std::move(out));
}

RdmElementSpec class_representative(std::size_t n_alpha, std::size_t n_beta, std::size_t p_alpha,
                                    std::size_t p_beta) {
  if (p_alpha > n_alpha || p_beta > n_beta) throw RangeError("more excitations than indices");
  RdmElementSpec spec;
  auto fill = [&](Spin spin, std::size_t n, std::size_t p) {
    const std::size_t shared = n - p;
    for (std::size_t i = 0; i < shared; ++i) {
      spec.upper.push_back({i, spin});
      spec.lower.push_back({i, spin});
    }
    for (std::size_t i = 0; i < p; ++i) {
      spec.upper.push_back({shared + i, spin});
      spec.lower.push_back({shared + p + i, spin});
    }
  };
  fill(Spin::Alpha, n_alpha, p_alpha);
  fill(Spin::Beta, n_beta, p_beta);
  return spec;
}

namespace {

std::size_t spatial_extent(const RdmElementSpec& spec) {
  std::size_t n = 0;
  for (const auto* side : {&spec.upper, &spec.lower}) {
    for (const auto& so : *side) n = std::max(n, so.spatial + 1);
  }
  return n;
}

CountTableRow count_row(std::size_t k, const RdmElementSpec& spec, Mapping mapping, const SymmetrySet& syms,
                        ModeOrder order) {
  const std::size_t n_spatial = spatial_extent(spec);
  const Encoding enc(EncodingSpec::make(mapping, 2 * n_spatial, order));
  const Projector proj(enc, syms);
  const auto targets = component_targets(rdm_element_operator(spec, n_spatial));
  const auto cls = classify(spec);
  CountTableRow row{k, cls.label, cls.q_sites, std::nullopt, select_measurements(targets, proj).size()};
  if (!cls.zero_class) row.naive = naive_measurements(targets, enc).size();
  return row;
}

}  // namespace

std::vector<CountTableRow> count_table(std::size_t k, Mapping mapping, const SymmetrySet& syms, ModeOrder order) {
  if (k < 1 || k > 3) throw RangeError("RDM order must be 1, 2, or 3");
  std::vector<CountTableRow> rows;
  for (std::size_t n_alpha = k; 2 * n_alpha >= k; --n_alpha) {
    const std::size_t n_beta = k - n_alpha;
    std::vector<CountTableRow> group;
    for (std::size_t pa = 0; pa <= n_alpha; ++pa) {
      for (std::size_t pb = 0; pb <= n_beta; ++pb) {
        if (n_alpha == n_beta && pa > pb) continue;
        group.push_back(count_row(k, class_representative(n_alpha, n_beta, pa, pb), mapping, syms, order));
      }
    }
    std::stable_sort(group.begin(), group.end(),
                     [](const CountTableRow& a, const CountTableRow& b) { return a.q_sites < b.q_sites; });
    rows.insert(rows.end(), group.begin(), group.end());

    // Spin-changing elements with the alpha count of this group on one side.
    if (4 * n_alpha >= 2 * k + 2) {
      RdmElementSpec zero;
      for (std::size_t i = 0; i < n_alpha; ++i) zero.upper.push_back({i, Spin::Alpha});
      for (std::size_t i = 0; i < n_beta; ++i) zero.upper.push_back({i, Spin::Beta});
      for (std::size_t i = 0; i + 1 < n_alpha; ++i) zero.lower.push_back({i, Spin::Alpha});
      for (std::size_t i = 0; i <= n_beta; ++i) zero.lower.push_back({i, Spin::Beta});
      rows.push_back(count_row(k, zero, mapping, syms, order));
    }
    if (n_alpha == 0) break;
  }
  return rows;
}

MeasurementSets rdm_measurement_sets(std::size_t k, std::size_t n_spatial, const Projector& proj) {
  const auto& enc = proj.encoding();
  if (enc.n_qubits() != 2 * n_spatial) throw DimensionError("encoding size differs from 2 * n_spatial");
  std::vector<RdmElementSpec> specs;
  for (auto& s : enumerate_rdm(k, n_spatial)) {
    if (!classify(s).zero_class) specs.push_back(std::move(s));
  }
  std::vector<std::vector<PauliString>> naive(specs.size()), reduced(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    const auto targets = component_targets(rdm_element_operator(specs[i], n_spatial));
    naive[i] = naive_measurements(targets, enc);
    reduced[i] = select_measurements(targets, proj);
  });
  auto merge = [](const std::vector<std::vector<PauliString>>& parts) {
    std::set<PauliKey> keys;
    for (const auto& p : parts) {
      for (const auto& s : p) keys.insert(key_of(s));
    }
    std::vector<PauliString> out;
    for (const auto& k : keys) out.emplace_back(k.x, k.z);
    return sorted_by_policy(std::move(out));
  };
  return {specs.size(), merge(naive), merge(reduced)};
}

}  // namespace spt
