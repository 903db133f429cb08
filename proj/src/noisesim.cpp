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

#include "spt/noisesim.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "spt/encode.hpp"
#include "spt/errors.hpp"
#include "spt/fermion.hpp"
#include "spt/group.hpp"
#include "spt/parallel.hpp"
#include "spt/reduce.hpp"
#include "spt/symproj.hpp"

namespace spt {
namespace {

constexpr double kPlanck = 6.62607015e-34;
constexpr double kBoltzmann = 1.380649e-23;
constexpr std::size_t kNoGroup = static_cast<std::size_t>(-1);

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(seed);
  for (auto p : path) s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
  return s;
}

// Index layout for acting with a small operator on chosen qubits.
struct Embedding {
  std::vector<std::size_t> offsets;  // full-index contribution of each sub-index
  std::vector<std::size_t> rests;    // full indices with every target bit clear

  Embedding(std::size_t n, const std::vector<std::size_t>& qubits) {
    std::size_t mask = 0;
    for (auto q : qubits) {
      if (q >= n) throw RangeError("qubit " + std::to_string(q) + " out of range");
      if (mask & (std::size_t{1} << q)) throw DimensionError("repeated target qubit");
      mask |= std::size_t{1} << q;
    }
    const std::size_t k = qubits.size();
    offsets.assign(std::size_t{1} << k, 0);
    for (std::size_t s = 0; s < offsets.size(); ++s) {
      for (std::size_t t = 0; t < k; ++t) {
        if ((s >> t) & 1u) offsets[s] |= std::size_t{1} << qubits[t];
      }
    }
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      if (!(i & mask)) rests.push_back(i);
    }
  }
};

// m <- K m on the target qubits.
void left_apply(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& k, const Embedding& e) {
  const auto s = static_cast<Eigen::Index>(e.offsets.size());
  Eigen::VectorXcd v(s), w(s);
  for (auto r : e.rests) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index a = 0; a < s; ++a) v(a) = m(static_cast<Eigen::Index>(r + e.offsets[a]), c);
      w.noalias() = k * v;
      for (Eigen::Index a = 0; a < s; ++a) m(static_cast<Eigen::Index>(r + e.offsets[a]), c) = w(a);
    }
  }
}

// m <- m K^dagger on the target qubits.
void right_apply_adjoint(Eigen::MatrixXcd& m, const Eigen::MatrixXcd& k, const Embedding& e) {
  const auto s = static_cast<Eigen::Index>(e.offsets.size());
  const Eigen::MatrixXcd kc = k.conjugate();
  Eigen::VectorXcd v(s), w(s);
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (auto r : e.rests) {
      for (Eigen::Index a = 0; a < s; ++a) v(a) = m(row, static_cast<Eigen::Index>(r + e.offsets[a]));
      w.noalias() = kc * v;
      for (Eigen::Index a = 0; a < s; ++a) m(row, static_cast<Eigen::Index>(r + e.offsets[a])) = w(a);
    }
  }
}

Eigen::MatrixXcd cnot_matrix() {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
  for (int s = 0; s < 4; ++s) {
    const int c = s & 1, t = (s >> 1) & 1;
    u(c | ((t ^ c) << 1), s) = 1.0;
  }
  return u;
}

Eigen::MatrixXcd gate_matrix(const Gate& g) { return g.type == GateType::Cnot ? cnot_matrix() : Eigen::MatrixXcd(g.u); }

bool identity_up_to_phase(const Eigen::Matrix2cd& u) { return std::abs(std::abs(u.trace()) - 2.0) < 1e-12; }

Eigen::Matrix2cd pauli_matrix(int letter) {
  Eigen::Matrix2cd m;
  switch (letter) {
    case 1:
      m << 0, 1, 1, 0;
      break;
    case 2:
      m << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case 3:
      m << 1, 0, 0, -1;
      break;
    default:
      m.setIdentity();
  }
  return m;
}

NormStats stats_of(const std::vector<double>& xs) {
  NormStats s;
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0;
    for (double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

DensityMatrix::DensityMatrix(std::size_t n_qubits) : n_(n_qubits) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  rho_ = Eigen::MatrixXcd::Zero(d, d);
  rho_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(std::size_t n_qubits, Eigen::MatrixXcd rho) : n_(n_qubits), rho_(std::move(rho)) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  if (rho_.rows() != d || rho_.cols() != d) throw DimensionError("density matrix size does not match qubit count");
}

DensityMatrix DensityMatrix::from_state(const Eigen::VectorXcd& psi) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < static_cast<std::size_t>(psi.size())) ++n;
  return DensityMatrix(n, psi * psi.adjoint());
}

void DensityMatrix::check(double tol, double psd_tol) const {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) throw ChannelError("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - cplx(1.0)) > tol) throw ChannelError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -psd_tol) throw ChannelError("density matrix has a negative eigenvalue");
}

double DensityMatrix::expectation(const PauliString& p) const {
  if (p.n_qubits() != n_) throw DimensionError("string size differs from the register");
  cplx acc = 0;
  for (std::size_t r = 0; r < dim(); ++r) {
    const auto act = basis_action(p, Bits::from_uint(n_, r));
    acc += act.amplitude * rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(act.out.to_uint()));
  }
  return acc.real();
}

Eigen::Matrix2cd DensityMatrix::qubit_state(std::size_t q) const {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t r = 0; r < dim(); ++r) {
    for (int b = 0; b < 2; ++b) {
      const std::size_t c = b ? (r | bit) : (r & ~bit);
      out((r & bit) ? 1 : 0, b) += rho_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

double Channel::completeness_error() const {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) return std::numeric_limits<double>::infinity();
    acc += k.adjoint() * k;
  }
  return (acc - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

void Channel::validate(double tol) const {
  const double err = completeness_error();
  if (!(err <= tol)) throw ChannelError("Kraus operators are not complete (error " + std::to_string(err) + ")");
}

Channel identity_channel(std::size_t n_qubits) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
  return {n_qubits, {Eigen::MatrixXcd::Identity(d, d)}};
}

Channel tensor(const Channel& a, const Channel& b) {
  Channel out{a.n_qubits + b.n_qubits, {}};
  const Eigen::Index da = std::int64_t{1} << a.n_qubits, db = std::int64_t{1} << b.n_qubits;
  for (const auto& kb : b.kraus) {
    for (const auto& ka : a.kraus) {
      Eigen::MatrixXcd k(da * db, da * db);
      for (Eigen::Index r = 0; r < da * db; ++r) {
        for (Eigen::Index c = 0; c < da * db; ++c) k(r, c) = ka(r % da, c % da) * kb(r / da, c / da);
      }
      out.kraus.push_back(std::move(k));
    }
  }
  return out;
}

double average_fidelity(const Channel& ch) {
  const double d = static_cast<double>(std::size_t{1} << ch.n_qubits);
  double acc = 0;
  for (const auto& k : ch.kraus) acc += std::norm(k.trace());
  return (acc + d) / (d * (d + 1));
}

double excited_population(double frequency_ghz, double temperature_k) {
  if (!(temperature_k > 0)) return 0.0;
  const double x = 2.0 * kPlanck * frequency_ghz * 1e9 / (kBoltzmann * temperature_k);
  return x > 700 ? 0.0 : 1.0 / (1.0 + std::exp(x));
}

RelaxationParams relaxation_params(double t1, double t2, double gate_time, double excited) {
  if (!(t1 > 0) || !(t2 > 0) || !(gate_time >= 0)) throw ParameterError("relaxation times must be positive");
  if (excited < 0 || excited > 1) throw ParameterError("excited population outside [0, 1]");
  const double r1 = std::exp(-gate_time / t1);
  const double r2 = std::exp(-gate_time / t2);
  return {1.0 - r1, 0.5 * r1 * (1.0 - r2 / r1), excited};
}

Channel thermal_relaxation_mixture(const RelaxationParams& p) {
  const double keep = 1.0 - p.p_z - p.p_reset;
  if (p.p_z < -1e-15 || keep < -1e-15) throw ParameterError("relaxation probabilities out of range for a mixture");
  const double p0 = (1.0 - p.excited_population) * p.p_reset;
  const double p1 = p.excited_population * p.p_reset;
  Channel ch{1, {}};
  auto add = [&](double w, Eigen::Matrix2cd m) {
    if (w > 0) ch.kraus.emplace_back(std::sqrt(w) * m);
  };
  Eigen::Matrix2cd m;
  add(std::max(keep, 0.0), Eigen::Matrix2cd::Identity());
  add(std::max(p.p_z, 0.0), pauli_matrix(3));
  m << 1, 0, 0, 0;
  add(p0, m);
  m << 0, 1, 0, 0;
  add(p0, m);
  m << 0, 0, 1, 0;
  add(p1, m);
  m << 0, 0, 0, 1;
  add(p1, m);
  if (ch.kraus.empty()) ch.kraus.emplace_back(Eigen::Matrix2cd::Identity());
  return ch;
}

Channel thermal_relaxation_choi(const RelaxationParams& p) {
  const double n1 = p.excited_population, n0 = 1.0 - n1, pr = p.p_reset, r2 = p.r_t2();
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  choi(0, 0) = 1.0 - n1 * pr;
  choi(1, 1) = n1 * pr;
  choi(2, 2) = n0 * pr;
  choi(3, 3) = 1.0 - n0 * pr;
  choi(0, 3) = r2;
  choi(3, 0) = r2;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(choi);
  Channel ch{1, {}};
  for (int i = 0; i < 4; ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam < -1e-9) throw ParameterError("relaxation Choi matrix is not positive (T2 > 2 T1?)");
    if (lam <= 1e-12) continue;
    Eigen::Matrix2cd k;
    for (int row = 0; row < 2; ++row) {
      for (int col = 0; col < 2; ++col) k(row, col) = std::sqrt(lam) * es.eigenvectors()(col * 2 + row, i);
    }
    ch.kraus.emplace_back(k);
  }
  return ch;
}

Channel thermal_relaxation_channel(const RelaxationParams& p) {
  return p.p_z >= 0 ? thermal_relaxation_mixture(p) : thermal_relaxation_choi(p);
}

Channel thermal_relaxation_channel(double t1, double t2, double gate_time, double excited) {
  const auto p = relaxation_params(t1, t2, gate_time, excited);
  return t2 <= t1 ? thermal_relaxation_mixture(p) : thermal_relaxation_choi(p);
}

DepolarizingStrength depolarizing_strength(double target_fidelity, const Channel& relax, std::size_t d) {
  const double dd = static_cast<double>(d);
  if (!(target_fidelity > 1.0 / dd) || target_fidelity > 1.0 + 1e-15) {
    throw ParameterError("target fidelity must lie in (1/d, 1]");
  }
  const double fr = average_fidelity(relax);
  DepolarizingStrength out;
  if (target_fidelity > fr) {
    out.saturated = true;
    return out;
  }
  const double lam = dd * (fr - target_fidelity) / (fr * dd - 1.0);
  out.lambda = std::clamp(lam, 0.0, dd * dd / (dd * dd - 1.0));
  return out;
}

Channel depolarizing_channel(double lambda, std::size_t n_qubits) {
  const std::size_t d = std::size_t{1} << n_qubits;
  const double d2 = static_cast<double>(d * d);
  if (lambda < 0 || lambda > d2 / (d2 - 1.0) + 1e-12) throw ParameterError("depolarizing strength out of range");
  Channel ch{n_qubits, {}};
  const auto di = static_cast<Eigen::Index>(d);
  const double w0 = 1.0 - lambda + lambda / d2;
  ch.kraus.emplace_back(std::sqrt(std::max(w0, 0.0)) * Eigen::MatrixXcd::Identity(di, di));
  if (lambda == 0.0) return ch;
  const double w = std::sqrt(lambda / d2);
  for (std::size_t code = 1; code < d * d; ++code) {
    Eigen::MatrixXcd k(di, di);
    for (Eigen::Index r = 0; r < di; ++r) {
      for (Eigen::Index c = 0; c < di; ++c) {
        cplx v = w;
        for (std::size_t q = 0; q < n_qubits; ++q) {
          const int letter = static_cast<int>((code >> (2 * q)) & 3u);
          v *= pauli_matrix(letter)((r >> q) & 1, (c >> q) & 1);
        }
        k(r, c) = v;
      }
    }
    ch.kraus.push_back(std::move(k));
  }
  return ch;
}

void apply_channel(DensityMatrix& rho, const Channel& ch, const std::vector<std::size_t>& qubits) {
  if (qubits.size() != ch.n_qubits) throw DimensionError("channel arity differs from target qubit count");
  ch.validate();
  const Embedding e(rho.n_qubits(), qubits);
  if (ch.kraus.size() == 1) {
    left_apply(rho.matrix(), ch.kraus.front(), e);
    right_apply_adjoint(rho.matrix(), ch.kraus.front(), e);
    return;
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho.matrix().rows(), rho.matrix().cols());
  for (const auto& k : ch.kraus) {
    Eigen::MatrixXcd m = rho.matrix();
    left_apply(m, k, e);
    right_apply_adjoint(m, k, e);
    acc += m;
  }
  rho.matrix() = std::move(acc);
}

void apply_unitary(DensityMatrix& rho, const Eigen::MatrixXcd& u, const std::vector<std::size_t>& qubits) {
  const Embedding e(rho.n_qubits(), qubits);
  left_apply(rho.matrix(), u, e);
  right_apply_adjoint(rho.matrix(), u, e);
}

std::vector<std::size_t> Gate::targets() const {
  if (type == GateType::Cnot) return {qubits[0], qubits[1]};
  return {qubits[0]};
}

PulseClass Gate::pulse() const {
  if (type == GateType::Cnot) return PulseClass::Cnot;
  if (std::abs(u(0, 1)) < 1e-12 && std::abs(u(1, 0)) < 1e-12) return PulseClass::Virtual;
  if (std::abs(std::abs(u(0, 0)) - std::numbers::sqrt2 / 2) < 1e-9) return PulseClass::U2;
  return PulseClass::U3;
}

Gate single_gate(std::string name, std::size_t q, const Eigen::Matrix2cd& u) {
  return {GateType::Single, {q, q}, u, std::move(name)};
}

Gate cnot_gate(std::size_t control, std::size_t target) {
  if (control == target) throw DimensionError("CNOT control equals target");
  return {GateType::Cnot, {control, target}, Eigen::Matrix2cd::Identity(), "cx"};
}

Eigen::Matrix2cd hadamard() {
  Eigen::Matrix2cd h;
  h << 1, 1, 1, -1;
  return h / std::numbers::sqrt2;
}

Eigen::Matrix2cd y_basis_change() {
  Eigen::Matrix2cd sdg;
  sdg << 1, 0, 0, cplx(0, -1);
  return hadamard() * sdg;
}

Eigen::Matrix2cd pauli_x() { return pauli_matrix(1); }

Eigen::Matrix2cd rz(double phi) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, -phi / 2);
  m(1, 1) = std::polar(1.0, phi / 2);
  return m;
}

std::size_t Circuit::cnot_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.type == GateType::Cnot; }));
}

std::size_t Circuit::pulse_count() const {
  return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [](const Gate& g) {
    return g.pulse() == PulseClass::U2 || g.pulse() == PulseClass::U3;
  }));
}

std::size_t Circuit::virtual_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.pulse() == PulseClass::Virtual; }));
}

std::vector<Gate> pauli_exponential(const PauliString& p, double theta) {
  std::vector<Gate> out;
  if (theta == 0.0 || p.weight() == 0) return out;
  const auto support = (p.x_mask() | p.z_mask()).indices();
  for (auto q : support) {
    const auto l = p.letter(q);
    if (l == PauliLetter::X) out.push_back(single_gate("h", q, hadamard()));
    if (l == PauliLetter::Y) out.push_back(single_gate("yb", q, y_basis_change()));
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i) out.push_back(cnot_gate(support[i], support[i + 1]));
  out.push_back(single_gate("rz", support.back(), rz(-2.0 * theta)));
  for (std::size_t i = support.size() - 1; i-- > 0;) out.push_back(cnot_gate(support[i], support[i + 1]));
  for (auto q : support) {
    const auto l = p.letter(q);
    if (l == PauliLetter::X) out.push_back(single_gate("h", q, hadamard()));
    if (l == PauliLetter::Y) out.push_back(single_gate("ybdg", q, y_basis_change().adjoint()));
  }
  return out;
}

namespace {

bool touches(const Gate& g, std::size_t q) { return g.qubits[0] == q || (g.type == GateType::Cnot && g.qubits[1] == q); }

// Index of the next gate after i sharing a qubit with gate i, or npos.
std::size_t next_on(const std::vector<Gate>& gates, std::size_t i, std::size_t q) {
  for (std::size_t j = i + 1; j < gates.size(); ++j) {
    if (touches(gates[j], q)) return j;
  }
  return kNoGroup;
}

bool cancel_pass(std::vector<Gate>& gates) {
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    const std::size_t j = next_on(gates, i, g.qubits[0]);
    if (j == kNoGroup) continue;
    const Gate& h = gates[j];
    if (g.type != h.type || g.qubits != h.qubits) continue;
    if (g.type == GateType::Cnot) {
      if (next_on(gates, i, g.qubits[1]) != j) continue;
    } else if (!identity_up_to_phase(h.u * g.u)) {
      continue;
    }
    gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
    gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
    return true;
  }
  return false;
}

bool merge_pass(std::vector<Gate>& gates) {
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (gates[i].type != GateType::Single) continue;
    if (identity_up_to_phase(gates[i].u)) {
      gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
      return true;
    }
    const std::size_t j = next_on(gates, i, gates[i].qubits[0]);
    if (j == kNoGroup || gates[j].type != GateType::Single) continue;
    gates[j].u = gates[j].u * gates[i].u;
    gates[j].name = "u";
    gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
    return true;
  }
  return false;
}

std::vector<Gate> ansatz_gates(double t1, double t2, double t3) {
  std::vector<Gate> g{single_gate("x", 0, pauli_x()), single_gate("x", 2, pauli_x())};
  auto append = [&](std::string_view letters, double theta) {
    auto e = pauli_exponential(PauliString::from_letters(letters), theta);
    g.insert(g.end(), e.begin(), e.end());
  };
  append("IIYX", t3);
  append("YXII", t2);
  append("YXXX", t1);
  return g;
}

}  // namespace

Circuit simplify(Circuit c) {
  while (cancel_pass(c.gates) || merge_pass(c.gates)) {
  }
  return c;
}

Circuit ansatz_circuit(double theta1, double theta2, double theta3) {
  return simplify(Circuit{4, ansatz_gates(theta1, theta2, theta3)});
}

Circuit measurement_circuit(double theta1, double theta2, double theta3, const PauliString& basis) {
  if (basis.n_qubits() != 4) throw DimensionError("measurement basis must act on 4 qubits");
  Circuit c{4, ansatz_gates(theta1, theta2, theta3)};
  for (std::size_t q = 0; q < 4; ++q) {
    if (basis.letter(q) == PauliLetter::X) c.gates.push_back(single_gate("h", q, hadamard()));
    if (basis.letter(q) == PauliLetter::Y) c.gates.push_back(single_gate("yb", q, y_basis_change()));
  }
  return simplify(std::move(c));
}

Eigen::VectorXcd simulate_statevector(const Circuit& c) {
  const auto d = static_cast<Eigen::Index>(std::size_t{1} << c.n_qubits);
  Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(d, 1);
  psi(0, 0) = 1.0;
  for (const auto& g : c.gates) left_apply(psi, gate_matrix(g), Embedding(c.n_qubits, g.targets()));
  return psi.col(0);
}

DeviceParameters DeviceParameters::bogota() {
  DeviceParameters p;
  p.qubits = {
      {5.000, 3.7e-4, 4.5e-4, 3.6e-2, 8.0e-2, 93.6, 133.3},
      {4.845, 3.2e-4, 6.5e-4, 17.3e-2, 15.1e-2, 59.9, 58.5},
      {4.783, 1.7e-4, 3.3e-4, 5.7e-2, 3.6e-2, 77.7, 120.6},
      {4.858, 2.4e-4, 4.8e-4, 3.0e-2, 0.9e-2, 131.1, 187.1},
      {4.978, 13.8e-4, 27.5e-4, 5.2e-2, 2.6e-2, 101.7, std::nullopt},
  };
  p.cnots = {
      {0, 1, 2.0e-2, 690}, {1, 0, 2.0e-2, 654}, {1, 2, 1.0e-2, 498}, {2, 1, 1.0e-2, 533},
      {2, 3, 1.0e-2, 626}, {3, 2, 1.0e-2, 590}, {3, 4, 4.8e-2, 370}, {4, 3, 4.8e-2, 334},
  };
  return p;
}

void DeviceParameters::validate() const {
  auto prob = [](double x, const char* what) {
    if (!(x >= 0 && x <= 1)) throw ParameterError(std::string(what) + " must lie in [0, 1]");
  };
  auto positive = [](double x, const char* what) {
    if (!(x > 0)) throw ParameterError(std::string(what) + " must be positive");
  };
  if (qubits.empty()) throw ParameterError("device has no qubits");
  if (cnots.empty()) throw ParameterError("device has no CNOT calibrations");
  bool any_t2 = false;
  for (const auto& q : qubits) {
    positive(q.frequency_ghz, "frequency");
    positive(q.t1_us, "T1");
    if (q.t2_us) {
      positive(*q.t2_us, "T2");
      any_t2 = true;
    }
    prob(q.u2_error, "U2 error");
    prob(q.u3_error, "U3 error");
    prob(q.ro_0_given_1, "RO0|1");
    prob(q.ro_1_given_0, "RO1|0");
  }
  if (!any_t2) throw ParameterError("no qubit reports T2");
  for (const auto& c : cnots) {
    prob(c.error, "CNOT error");
    positive(c.length_ns, "CNOT length");
  }
  positive(u2_length_ns, "U2 length");
  positive(u3_length_ns, "U3 length");
  positive(temperature_k, "temperature");
}

AveragedDevice DeviceParameters::averaged() const {
  validate();
  AveragedDevice a;
  std::size_t n_t2 = 0;
  for (const auto& q : qubits) {
    a.t1_us += q.t1_us;
    a.frequency_ghz += q.frequency_ghz;
    a.u2_error += q.u2_error;
    a.u3_error += q.u3_error;
    a.ro_0_given_1 += q.ro_0_given_1;
    a.ro_1_given_0 += q.ro_1_given_0;
    if (q.t2_us) {
      a.t2_us += *q.t2_us;
      ++n_t2;
    }
  }
  const double nq = static_cast<double>(qubits.size());
  a.t1_us /= nq;
  a.frequency_ghz /= nq;
  a.u2_error /= nq;
  a.u3_error /= nq;
  a.ro_0_given_1 /= nq;
  a.ro_1_given_0 /= nq;
  a.t2_us /= static_cast<double>(n_t2);
  for (const auto& c : cnots) {
    a.cnot_error += c.error;
    a.cnot_length_ns += c.length_ns;
  }
  a.cnot_error /= static_cast<double>(cnots.size());
  a.cnot_length_ns /= static_cast<double>(cnots.size());
  a.u2_length_ns = u2_length_ns;
  a.u3_length_ns = u3_length_ns;
  a.temperature_k = temperature_k;
  return a;
}

NoiseModel::NoiseModel(const AveragedDevice& dev, double scale) {
  if (!(scale >= 0 && scale <= 1)) throw ParameterError("noise scale must lie in [0, 1]");
  if (scale == 0.0) return;
  noiseless_ = false;
  readout_ = {scale * dev.ro_0_given_1, scale * dev.ro_1_given_0};
  const double n1 = excited_population(dev.frequency_ghz, dev.temperature_k);
  auto single = [&](double length_ns, double error, Channel& relax, Channel& depol, double& lambda) {
    const auto p = relaxation_params(dev.t1_us, dev.t2_us, length_ns * 1e-3, n1);
    lambda = depolarizing_strength(1.0 - error, thermal_relaxation_channel(p), 2).lambda;
    relax = thermal_relaxation_channel(p.scaled(scale));
    depol = depolarizing_channel(scale * lambda, 1);
  };
  single(dev.u2_length_ns, dev.u2_error, relax_u2_, depol_u2_, lambda_[0]);
  single(dev.u3_length_ns, dev.u3_error, relax_u3_, depol_u3_, lambda_[1]);
  const auto pc = relaxation_params(dev.t1_us, dev.t2_us, dev.cnot_length_ns * 1e-3, n1);
  const Channel full = thermal_relaxation_channel(pc);
  lambda_[2] = depolarizing_strength(1.0 - dev.cnot_error, tensor(full, full), 4).lambda;
  relax_cnot_ = thermal_relaxation_channel(pc.scaled(scale));
  depol_cnot_ = depolarizing_channel(scale * lambda_[2], 2);
}

void NoiseModel::apply(DensityMatrix& rho, const Gate& g) const {
  const auto targets = g.targets();
  apply_unitary(rho, gate_matrix(g), targets);
  if (noiseless_) return;
  switch (g.pulse()) {
    case PulseClass::Virtual:
      return;
    case PulseClass::U2:
      apply_channel(rho, depol_u2_, targets);
      apply_channel(rho, relax_u2_, targets);
      return;
    case PulseClass::U3:
      apply_channel(rho, depol_u3_, targets);
      apply_channel(rho, relax_u3_, targets);
      return;
    case PulseClass::Cnot:
      apply_channel(rho, depol_cnot_, targets);
      apply_channel(rho, relax_cnot_, {targets[0]});
      apply_channel(rho, relax_cnot_, {targets[1]});
      return;
  }
}

DensityMatrix run_circuit(const Circuit& c, const NoiseModel& noise) {
  DensityMatrix rho(c.n_qubits);
  for (const auto& g : c.gates) noise.apply(rho, g);
  return rho;
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Readout& readout) {
  std::vector<double> p(rho.dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = std::max(0.0, rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
  }
  for (std::size_t q = 0; q < rho.n_qubits(); ++q) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i & bit) continue;
      const double p0 = p[i], p1 = p[i | bit];
      p[i] = p0 * (1 - readout.p1_given_0) + p1 * readout.p0_given_1;
      p[i | bit] = p0 * readout.p1_given_0 + p1 * (1 - readout.p0_given_1);
    }
  }
  return p;
}

std::map<std::string, std::size_t> measure_counts(const DensityMatrix& rho, const PauliString& basis,
                                                  std::size_t shots, const Readout& readout, std::uint64_t seed) {
  if (shots == 0) throw ParameterError("shots must be at least 1");
  if (basis.n_qubits() != rho.n_qubits()) throw DimensionError("basis size differs from the register");
  DensityMatrix rotated = rho;
  for (std::size_t q = 0; q < rho.n_qubits(); ++q) {
    if (basis.letter(q) == PauliLetter::X) apply_unitary(rotated, hadamard(), {q});
    if (basis.letter(q) == PauliLetter::Y) apply_unitary(rotated, y_basis_change(), {q});
  }
  const auto probs = outcome_probabilities(rotated, {});
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
  std::bernoulli_distribution flip_up(readout.p1_given_0), flip_down(readout.p0_given_1);
  std::vector<std::size_t> tally(probs.size(), 0);
  for (std::size_t s = 0; s < shots; ++s) {
    std::size_t outcome = pick(rng);
    for (std::size_t q = 0; q < rho.n_qubits(); ++q) {
      const std::size_t bit = std::size_t{1} << q;
      if ((outcome & bit) ? flip_down(rng) : flip_up(rng)) outcome ^= bit;
    }
    ++tally[outcome];
  }
  std::map<std::string, std::size_t> counts;
  for (std::size_t i = 0; i < tally.size(); ++i) {
    if (tally[i]) counts[Bits::from_uint(rho.n_qubits(), i).to_string()] = tally[i];
  }
  return counts;
}

double expectation_from_counts(const std::map<std::string, std::size_t>& counts, const PauliString& p) {
  const Bits support = p.x_mask() | p.z_mask();
  double acc = 0;
  std::size_t total = 0;
  for (const auto& [bits, n] : counts) {
    const Bits b = Bits::from_string(bits);
    acc += (and_popcount(b, support) & 1u) ? -static_cast<double>(n) : static_cast<double>(n);
    total += n;
  }
  return total ? acc / static_cast<double>(total) : 0.0;
}

TomographyPlan::TomographyPlan() {
  constexpr std::size_t n_spatial = 2;
  const Encoding enc(EncodingSpec::make(Mapping::JordanWigner, 2 * n_spatial));
  const Projector proj(enc, {Symmetry::N, Symmetry::Sz});

  struct Raw {
    RdmElementSpec spec;
    bool self_adjoint;
    PauliSum naive[2];
    ReducedBasis reduced;
  };
  std::vector<Raw> raws;
  std::set<PauliKey> naive_keys, reduced_keys;
  for (const auto& spec : enumerate_rdm(2, n_spatial)) {
    if (classify(spec).zero_class) continue;
    auto parts = hermitian_components(rdm_element_operator(spec, n_spatial));
    Raw raw{spec, parts.imag_part.empty(), {enc.encode(parts.real_part), PauliSum(4)}, {}};
    std::vector<FermionOperator> targets{parts.real_part};
    if (!raw.self_adjoint) {
      raw.naive[1] = enc.encode(parts.imag_part);
      targets.push_back(parts.imag_part);
    }
    raw.reduced = reduce_measurements(targets, proj);
    for (const auto& part : raw.naive) {
      for (const auto& [k, c] : part.terms()) naive_keys.insert(k);
    }
    for (const auto& m : raw.reduced.measurements) reduced_keys.insert(key_of(m));
    raws.push_back(std::move(raw));
  }

  auto build_groups = [](const std::set<PauliKey>& keys, std::vector<PauliString>& bases,
                         std::vector<std::vector<PauliString>>& groups, std::map<PauliKey, std::size_t>& where) {
    std::vector<PauliString> strings;
    for (const auto& k : keys) strings.emplace_back(k.x, k.z);
    strings = without_identity(strings);
    for (const auto& g : group_qubitwise(strings).groups) {
      std::vector<PauliString> members;
      for (auto i : g) {
        members.push_back(strings[i]);
        where[key_of(strings[i])] = groups.size();
      }
      bases.push_back(measurement_basis(members));
      groups.push_back(std::move(members));
    }
  };
  std::map<PauliKey, std::size_t> naive_where, reduced_where;
  build_groups(naive_keys, naive_bases_, naive_groups_, naive_where);
  build_groups(reduced_keys, reduced_bases_, reduced_groups_, reduced_where);
  auto group_of = [](const std::map<PauliKey, std::size_t>& where, const PauliKey& k) {
    auto it = where.find(k);
    return it == where.end() ? kNoGroup : it->second;
  };

  for (const auto& raw : raws) {
    Element e;
    e.row = blocked_mode(raw.spec.upper[0], n_spatial) * 4 + blocked_mode(raw.spec.upper[1], n_spatial);
    e.col = blocked_mode(raw.spec.lower[0], n_spatial) * 4 + blocked_mode(raw.spec.lower[1], n_spatial);
    e.self_adjoint = raw.self_adjoint;
    for (int c = 0; c < 2; ++c) {
      for (const auto& [k, coeff] : raw.naive[c].terms()) {
        e.naive[c].push_back({PauliString(k.x, k.z), group_of(naive_where, k), coeff});
      }
      if (c < static_cast<int>(raw.reduced.coefficients.size())) {
        for (std::size_t j = 0; j < raw.reduced.measurements.size(); ++j) {
          const cplx x = raw.reduced.coefficients[c][j];
          if (std::abs(x) < kPruneTolerance) continue;
          const auto k = key_of(raw.reduced.measurements[j]);
          e.reduced[c].push_back({PauliString(k.x, k.z), group_of(reduced_where, k), x});
        }
      }
    }
    elements_.push_back(std::move(e));
  }
}

template <class Value>
Eigen::MatrixXcd TomographyPlan::build(bool reduced, Value&& value) const {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(16, 16);
  for (const auto& e : elements_) {
    cplx v[2] = {0, 0};
    for (int c = 0; c < 2; ++c) {
      for (const auto& t : reduced ? e.reduced[c] : e.naive[c]) {
        v[c] += t.coeff * (t.group == kNoGroup ? 1.0 : value(t));
      }
    }
    const cplx val = e.self_adjoint ? v[0] : 0.5 * (v[0] - cplx(0, 1) * v[1]);
    const std::size_t i = e.row / 4, k = e.row % 4, j = e.col / 4, l = e.col % 4;
    const std::size_t rows[2] = {i * 4 + k, k * 4 + i};
    const std::size_t cols[2] = {j * 4 + l, l * 4 + j};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const cplx s = (a + b) % 2 ? -val : val;
        d(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(cols[b])) = s;
        d(static_cast<Eigen::Index>(cols[b]), static_cast<Eigen::Index>(rows[a])) = std::conj(s);
      }
    }
  }
  return d;
}

Eigen::MatrixXcd TomographyPlan::assemble(bool reduced,
                                          const std::vector<std::map<PauliKey, double>>& group_values) const {
  return build(reduced, [&](const Term& t) { return group_values.at(t.group).at(key_of(t.string)); });
}

Eigen::MatrixXcd TomographyPlan::exact(const Eigen::VectorXcd& psi, bool reduced) const {
  const DensityMatrix rho = DensityMatrix::from_state(psi);
  return build(reduced, [&](const Term& t) { return rho.expectation(t.string); });
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  if (config.states == 0) throw ParameterError("at least one random state is required");
  const TomographyPlan plan;
  const AveragedDevice device = config.device.averaged();
  std::vector<NoiseModel> models;
  for (double level : config.levels) {
    if (!(level >= 0)) throw ParameterError("noise levels must be nonnegative");
    models.emplace_back(device, std::isinf(level) ? 0.0 : std::pow(0.5, level));
  }
  const bool want_naive = config.mode != BasisMode::Reduced;
  const bool want_reduced = config.mode != BasisMode::Naive;
  const std::size_t n_levels = config.levels.size();

  // norms[state][level] = {ideal-naive, ideal-reduced, naive-reduced}
  std::vector<std::vector<std::array<double, 3>>> norms(config.states,
                                                         std::vector<std::array<double, 3>>(n_levels));
  parallel_for(config.states, [&](std::size_t s) {
    std::mt19937_64 rng(derive_seed(config.seed, {s}));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    const double t1 = angle(rng), t2 = angle(rng), t3 = angle(rng);
    const Eigen::MatrixXcd ideal = plan.exact(simulate_statevector(ansatz_circuit(t1, t2, t3)));

    for (std::size_t lv = 0; lv < n_levels; ++lv) {
      std::map<PauliKey, std::vector<double>> dist_cache;
      auto estimate = [&](bool reduced) {
        const auto& bases = plan.bases(reduced);
        std::vector<std::map<PauliKey, double>> values(bases.size());
        for (std::size_t g = 0; g < bases.size(); ++g) {
          auto it = dist_cache.find(key_of(bases[g]));
          if (it == dist_cache.end()) {
            const auto rho = run_circuit(measurement_circuit(t1, t2, t3, bases[g]), models[lv]);
            it = dist_cache.emplace(key_of(bases[g]), outcome_probabilities(rho, models[lv].readout())).first;
          }
          const auto& probs = it->second;
          std::vector<double> freq = probs;
          if (config.shots > 0) {
            std::mt19937_64 shot_rng(derive_seed(config.seed, {s, lv, reduced ? 1u : 0u, g}));
            std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
            std::fill(freq.begin(), freq.end(), 0.0);
            for (std::size_t k = 0; k < config.shots; ++k) freq[pick(shot_rng)] += 1.0;
            for (auto& f : freq) f /= static_cast<double>(config.shots);
          }
          for (const auto& str : plan.group_strings(reduced, g)) {
            const Bits support = str.x_mask() | str.z_mask();
            double acc = 0;
            for (std::size_t b = 0; b < freq.size(); ++b) {
              acc += (and_popcount(Bits::from_uint(4, b), support) & 1u) ? -freq[b] : freq[b];
            }
            values[g][key_of(str)] = acc;
          }
        }
        return plan.assemble(reduced, values);
      };
      const Eigen::MatrixXcd naive = want_naive ? estimate(false) : Eigen::MatrixXcd();
      const Eigen::MatrixXcd reduced = want_reduced ? estimate(true) : Eigen::MatrixXcd();
      auto& out = norms[s][lv];
      out[0] = want_naive ? (ideal - naive).norm() : 0.0;
      out[1] = want_reduced ? (ideal - reduced).norm() : 0.0;
      out[2] = want_naive && want_reduced ? (naive - reduced).norm() : 0.0;
    }
  });

  ExperimentReport report;
  report.states = config.states;
  report.shots = config.shots;
  report.seed = config.seed;
  report.naive_circuits = plan.bases(false).size();
  report.reduced_circuits = plan.bases(true).size();
  for (std::size_t lv = 0; lv < n_levels; ++lv) {
    LevelReport r;
    r.level = config.levels[lv];
    r.scale = std::isinf(r.level) ? 0.0 : std::pow(0.5, r.level);
    std::array<std::vector<double>, 3> cols;
    for (std::size_t s = 0; s < config.states; ++s) {
      for (int c = 0; c < 3; ++c) cols[c].push_back(norms[s][lv][c]);
    }
    if (want_naive) r.ideal_vs_naive = stats_of(cols[0]);
    if (want_reduced) r.ideal_vs_reduced = stats_of(cols[1]);
    if (want_naive && want_reduced) r.naive_vs_reduced = stats_of(cols[2]);
    report.levels.push_back(r);
  }
  return report;
}

}  // namespace spt
