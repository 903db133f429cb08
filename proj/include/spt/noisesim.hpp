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
#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spt/pauli.hpp"

namespace spt {

class DensityMatrix {
 public:
  /// |0...0><0...0| on n qubits.
  explicit DensityMatrix(std::size_t n_qubits);
  DensityMatrix(std::size_t n_qubits, Eigen::MatrixXcd rho);
  static DensityMatrix from_state(const Eigen::VectorXcd& psi);

  std::size_t n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::MatrixXcd& matrix() { return rho_; }

  /// Throws ChannelError unless Hermitian and unit-trace to `tol` with
  /// eigenvalues at least -psd_tol.
  void check(double tol = 1e-10, double psd_tol = 1e-9) const;
  double expectation(const PauliString& p) const;
  /// Reduced state on a single qubit.
  Eigen::Matrix2cd qubit_state(std::size_t q) const;

 private:
  std::size_t n_;
  Eigen::MatrixXcd rho_;
};

struct Channel {
  std::size_t n_qubits = 1;
  std::vector<Eigen::MatrixXcd> kraus;

  /// Largest entry of sum K^dagger K - I.
  double completeness_error() const;
  /// Throws ChannelError when the completeness error exceeds `tol`.
  void validate(double tol = 1e-10) const;
};

Channel identity_channel(std::size_t n_qubits);
Channel tensor(const Channel& a, const Channel& b);
/// Average gate fidelity against the identity, (sum_k |Tr K_k|^2 + d) / (d (d + 1)).
double average_fidelity(const Channel& ch);

/// Relaxation probabilities for one gate: reset probability 1 - exp(-Tg/T1),
/// phase-flip probability (1/2)(1 - p_reset)(1 - r_T2/r_T1), and excited
/// population. A negative p_z marks T2 > T1.
struct RelaxationParams {
  double p_reset = 0.0;
  double p_z = 0.0;
  double excited_population = 0.0;

  double r_t2() const { return 1.0 - p_reset - 2.0 * p_z; }
  RelaxationParams scaled(double s) const { return {s * p_reset, s * p_z, excited_population}; }
};

RelaxationParams relaxation_params(double t1, double t2, double gate_time, double excited_population);
/// Thermal excited-state population 1 / (1 + exp(2 h f / (k_B T))).
double excited_population(double frequency_ghz, double temperature_k);

/// Reset and phase-flip mixture; requires p_z >= 0.
Channel thermal_relaxation_mixture(const RelaxationParams& p);
/// Kraus operators from the eigendecomposition of the relaxation Choi matrix.
Channel thermal_relaxation_choi(const RelaxationParams& p);
/// Mixture when T2 <= T1, Choi route otherwise. Times share one unit.
Channel thermal_relaxation_channel(double t1, double t2, double gate_time, double excited_population);
Channel thermal_relaxation_channel(const RelaxationParams& p);

struct DepolarizingStrength {
  double lambda = 0.0;
  /// The relaxation alone already falls below the target fidelity.
  bool saturated = false;
};

DepolarizingStrength depolarizing_strength(double target_fidelity, const Channel& relax, std::size_t d);
Channel depolarizing_channel(double lambda, std::size_t n_qubits);

/// rho <- sum_k K rho K^dagger on `qubits` (qubits[0] is the low bit of the Kraus index).
void apply_channel(DensityMatrix& rho, const Channel& ch, const std::vector<std::size_t>& qubits);
void apply_unitary(DensityMatrix& rho, const Eigen::MatrixXcd& u, const std::vector<std::size_t>& qubits);

enum class GateType { Single, Cnot };
/// Pulse class of a single-qubit gate: diagonal gates are frame changes.
enum class PulseClass { Virtual, U2, U3, Cnot };

struct Gate {
  GateType type = GateType::Single;
  std::array<std::size_t, 2> qubits{0, 0};  // control, target for CNOT
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
  std::string name;

  std::vector<std::size_t> targets() const;
  PulseClass pulse() const;
};

Gate single_gate(std::string name, std::size_t q, const Eigen::Matrix2cd& u);
Gate cnot_gate(std::size_t control, std::size_t target);
Eigen::Matrix2cd hadamard();
/// H S^dagger: maps Y to Z under conjugation.
Eigen::Matrix2cd y_basis_change();
Eigen::Matrix2cd pauli_x();
/// exp(-i phi Z / 2).
Eigen::Matrix2cd rz(double phi);

struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;

  std::size_t cnot_count() const;
  /// Single-qubit gates that need a pulse (frame changes excluded).
  std::size_t pulse_count() const;
  std::size_t virtual_count() const;
};

/// Basis change, CNOT ladder, Rz, reverse ladder, and inverse basis change
/// realizing exp(i theta P). Zero angles produce no gates.
std::vector<Gate> pauli_exponential(const PauliString& p, double theta);

/// Cancels adjacent inverse pairs and fuses runs of single-qubit gates until
/// nothing changes.
Circuit simplify(Circuit c);

/// Reference |1010> (alpha and beta lowest orbitals filled) followed by
/// exp(i t3 Y3 X4), exp(i t2 Y1 X2), exp(i t1 Y1 X2 X3 X4), simplified.
Circuit ansatz_circuit(double theta1, double theta2, double theta3);
/// Ansatz followed by rotations into the basis of `basis`, simplified together.
Circuit measurement_circuit(double theta1, double theta2, double theta3, const PauliString& basis);

Eigen::VectorXcd simulate_statevector(const Circuit& c);

struct QubitCalibration {
  double frequency_ghz = 5.0;
  double u2_error = 0.0;
  double u3_error = 0.0;
  double ro_0_given_1 = 0.0;
  double ro_1_given_0 = 0.0;
  double t1_us = 100.0;
  std::optional<double> t2_us;

  friend bool operator==(const QubitCalibration&, const QubitCalibration&) = default;
};

struct CnotCalibration {
  std::size_t control = 0;
  std::size_t target = 1;
  double error = 0.0;
  double length_ns = 0.0;

  friend bool operator==(const CnotCalibration&, const CnotCalibration&) = default;
};

struct AveragedDevice {
  double t1_us = 0.0;
  double t2_us = 0.0;
  double frequency_ghz = 0.0;
  double u2_error = 0.0;
  double u3_error = 0.0;
  double ro_0_given_1 = 0.0;
  double ro_1_given_0 = 0.0;
  double cnot_error = 0.0;
  double cnot_length_ns = 0.0;
  double u2_length_ns = 35.0;
  double u3_length_ns = 71.0;
  double temperature_k = 0.020;
};

struct DeviceParameters {
  std::vector<QubitCalibration> qubits;
  std::vector<CnotCalibration> cnots;
  double u2_length_ns = 35.0;
  double u3_length_ns = 71.0;
  double temperature_k = 0.020;

  /// Five-qubit calibration snapshot used by default.
  static DeviceParameters bogota();
  /// Throws ParameterError for nonpositive times or probabilities outside [0, 1].
  void validate() const;
  /// Means over qubits (T2 over the qubits that report one) and CNOT pairs.
  AveragedDevice averaged() const;

  friend bool operator==(const DeviceParameters&, const DeviceParameters&) = default;
};

struct Readout {
  double p0_given_1 = 0.0;
  double p1_given_0 = 0.0;
};

/// Per-gate channels for one noise strength s; s = 0 is noiseless.
class NoiseModel {
 public:
  NoiseModel() = default;
  NoiseModel(const AveragedDevice& device, double scale);

  bool noiseless() const { return noiseless_; }
  const Readout& readout() const { return readout_; }
  /// Applies `g` and its noise to rho.
  void apply(DensityMatrix& rho, const Gate& g) const;

  /// Depolarizing strengths before scaling.
  double lambda_u2() const { return lambda_[0]; }
  double lambda_u3() const { return lambda_[1]; }
  double lambda_cnot() const { return lambda_[2]; }

 private:
  bool noiseless_ = true;
  Readout readout_;
  std::array<double, 3> lambda_{0, 0, 0};
  Channel relax_u2_, relax_u3_, relax_cnot_;
  Channel depol_u2_, depol_u3_, depol_cnot_;
};

DensityMatrix run_circuit(const Circuit& c, const NoiseModel& noise);

/// Outcome probabilities in the computational basis after readout flips.
std::vector<double> outcome_probabilities(const DensityMatrix& rho, const Readout& readout);

/// Rotates into the basis of `basis` (X via H, Y via H S^dagger), samples
/// `shots` outcomes and flips each read bit. Keys are bit strings with qubit 1
/// leftmost.
std::map<std::string, std::size_t> measure_counts(const DensityMatrix& rho, const PauliString& basis,
                                                  std::size_t shots, const Readout& readout, std::uint64_t seed);

/// Mean of (-1)^(parity of the bits on p's support).
double expectation_from_counts(const std::map<std::string, std::size_t>& counts, const PauliString& p);

enum class BasisMode { Naive, Reduced, Both };

struct ExperimentConfig {
  /// Noise exponents n for strength (1/2)^n; infinity means noiseless.
  std::vector<double> levels{0, 1, 2, 3, 4, std::numeric_limits<double>::infinity()};
  std::size_t states = 25;
  /// Zero means exact expectations.
  std::size_t shots = 8192;
  std::uint64_t seed = 42;
  DeviceParameters device = DeviceParameters::bogota();
  BasisMode mode = BasisMode::Both;
};

struct NormStats {
  double mean = 0.0;
  double std = 0.0;

  friend bool operator==(const NormStats&, const NormStats&) = default;
};

struct LevelReport {
  double level = 0.0;
  double scale = 1.0;
  std::optional<NormStats> ideal_vs_naive;
  std::optional<NormStats> ideal_vs_reduced;
  std::optional<NormStats> naive_vs_reduced;

  friend bool operator==(const LevelReport&, const LevelReport&) = default;
};

struct ExperimentReport {
  std::size_t states = 0;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::size_t naive_circuits = 0;
  std::size_t reduced_circuits = 0;
  std::vector<LevelReport> levels;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Two-electron, four-spin-orbital tomography plan: every 2-RDM element with
/// its naive Pauli expansion and its symmetry-reduced coefficients, and the
/// qubit-wise groups that measure each set.
class TomographyPlan {
 public:
  TomographyPlan();

  /// Measurement basis of each group.
  const std::vector<PauliString>& bases(bool reduced) const { return reduced ? reduced_bases_ : naive_bases_; }

  /// 16 x 16 matrix D[(i,k),(j,l)] = <a+_i a+_k a_l a_j>. group_values[g]
  /// holds the estimated expectation of every string measured in group g.
  Eigen::MatrixXcd assemble(bool reduced, const std::vector<std::map<PauliKey, double>>& group_values) const;
  /// Same assembly with exact expectations of a pure state.
  Eigen::MatrixXcd exact(const Eigen::VectorXcd& psi, bool reduced = false) const;
  /// Strings measured in group g.
  const std::vector<PauliString>& group_strings(bool reduced, std::size_t g) const {
    return reduced ? reduced_groups_[g] : naive_groups_[g];
  }

 private:
  struct Term {
    PauliString string;
    std::size_t group;  // npos for the identity
    cplx coeff;
  };
  struct Element {
    std::size_t row = 0, col = 0;
    bool self_adjoint = false;
    std::vector<Term> naive[2];
    std::vector<Term> reduced[2];
  };
  template <class Value>
  Eigen::MatrixXcd build(bool reduced, Value&& value) const;

  std::vector<Element> elements_;
  std::vector<PauliString> naive_bases_, reduced_bases_;
  std::vector<std::vector<PauliString>> naive_groups_, reduced_groups_;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace spt
