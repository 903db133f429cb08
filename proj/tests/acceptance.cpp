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

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "checks.hpp"
#include "oracle.hpp"
#include "spt/group.hpp"
#include "spt/noisesim.hpp"
#include "spt/reduce.hpp"

using namespace spt;

namespace {

Channel relaxation_channel_sample(double a, double b, double c, double d) {
  const double t1 = 50 + 100 * a;
  return thermal_relaxation_channel(t1, t1 * (0.1 + 1.85 * b), 0.4 * c, 0.1 * d);
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(4) << v;
  return s.str();
}

Outcome two_mode_golden() {
  Outcome o;
  const cplx i(0, 1);
  const SymmetrySet n_only = parse_symmetries("n");
  const std::pair<const char*, std::pair<cplx, cplx>> printed[] = {
      {"XX", {1.0, 1.0}}, {"XY", {-i, i}}, {"YX", {i, -i}}, {"YY", {1.0, 1.0}}};
  for (const auto& [letters, e] : printed) {
    const auto p = project(PauliString::from_letters(letters), n_only);
    o.require(p.entries.size() == 2 && p.entry("10", "01") == e.first && p.entry("01", "10") == e.second,
              std::string("projected entries of ") + letters);
  }
  const Projector proj(Encoding(EncodingSpec::make(Mapping::JordanWigner, 2)), n_only);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx c1 = oracle::random_complex(rng), c2 = oracle::random_complex(rng);
    const auto op = checks::two_mode_hopping(c1, c2);
    PauliSum printed_sum(2);
    printed_sum.add(PauliString::from_letters("XX", 0.25 * (c1 + c2)));
    printed_sum.add(PauliString::from_letters("YY", 0.25 * (c1 + c2)));
    printed_sum.add(PauliString::from_letters("XY", 0.25 * i * (c1 - c2)));
    printed_sum.add(PauliString::from_letters("YX", -0.25 * i * (c1 - c2)));
    o.require(encode(op, EncodingSpec::make(Mapping::JordanWigner, 2)).approx_equal(printed_sum, 1e-15),
              "encoded Pauli sum");
    const auto basis = reduce_measurements({op}, proj);
    const bool shape = basis.measurements.size() == 2 && basis.measurements[0].letters() == "XX" &&
                       basis.measurements[1].letters() == "XY";
    o.require(shape, "measurement strings");
    if (!shape) break;
    o.require(std::abs(basis.coefficients[0][0] - 0.5 * (c1 + c2)) < 1e-12 &&
                  std::abs(basis.coefficients[0][1] - 0.5 * (i * c1 - i * c2)) < 1e-12,
              "solution vector");
  }
  return o;
}

Outcome published_counts() {
  Outcome o;
  std::map<std::string, CountTableRow> produced;
  std::size_t rows = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    for (const auto& r : count_table(k, Mapping::JordanWigner, parse_symmetries("n,sz"))) {
      produced[std::to_string(k) + r.spin_class] = r;
      ++rows;
    }
  }
  o.require(rows == checks::published_counts().size(), "row count " + std::to_string(rows));
  for (const auto& e : checks::published_counts()) {
    const auto it = produced.find(std::to_string(e.k) + e.label);
    o.require(it != produced.end(), "missing class " + e.label);
    if (it == produced.end()) continue;
    o.require(it->second.naive == e.naive && it->second.reduced == e.reduced,
              "class " + e.label + " reduced " + std::to_string(it->second.reduced));
  }
  o.detail = o.pass ? std::to_string(rows) + " rows" : o.detail;
  return o;
}

Outcome reconstruction_equivalence() {
  Outcome o;
  std::mt19937_64 rng(99);
  double worst = 0.0, worst_fermion = 0.0;
  std::size_t states = 0;
  for (std::size_t n_spatial : {2u, 3u}) {
    const auto gap = checks::reconstruction_gap(Mapping::JordanWigner, n_spatial, 50, rng);
    worst = std::max(worst, gap.reduced_vs_naive);
    worst_fermion = std::max(worst_fermion, gap.naive_vs_fermion);
    states += gap.states;
  }
  o.require(states == 100, "state count");
  o.require(worst < 1e-10, "reduced vs naive gap " + fmt(worst));
  o.require(worst_fermion < 1e-10, "naive vs fermion gap " + fmt(worst_fermion));
  if (o.pass) o.detail = "max gap " + fmt(worst);
  return o;
}

Outcome dense_rank_minimality() {
  Outcome o;
  std::size_t classes = 0;
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto rows = count_table(k, Mapping::JordanWigner, parse_symmetries("n,sz"));
    std::map<std::string, std::size_t> reduced;
    for (const auto& r : rows) reduced[r.spin_class] = r.reduced;
    for (std::size_t na = k; 2 * na >= k; --na) {
      const std::size_t nb = k - na;
      for (std::size_t pa = 0; pa <= na; ++pa) {
        for (std::size_t pb = 0; pb <= nb; ++pb) {
          if (na == nb && pa > pb) continue;
          const auto spec = class_representative(na, nb, pa, pb);
          const auto label = classify(spec).label;
          const auto dense = checks::dense_reduced_count(spec, true, true);
          o.require(reduced.count(label) && reduced[label] == dense,
                    label + " dense rank " + std::to_string(dense));
          ++classes;
        }
      }
      if (4 * na >= 2 * k + 2) {
        RdmElementSpec zero;
        for (std::size_t i = 0; i < na; ++i) zero.upper.push_back({i, Spin::Alpha});
        for (std::size_t i = 0; i < nb; ++i) zero.upper.push_back({i, Spin::Beta});
        for (std::size_t i = 0; i + 1 < na; ++i) zero.lower.push_back({i, Spin::Alpha});
        for (std::size_t i = 0; i <= nb; ++i) zero.lower.push_back({i, Spin::Beta});
        const auto label = classify(zero).label;
        const auto dense = checks::dense_reduced_count(zero, true, true);
        o.require(reduced.count(label) && reduced[label] == dense, label + " dense rank " + std::to_string(dense));
        ++classes;
      }
      if (na == 0) break;
    }
  }
  if (o.pass) o.detail = std::to_string(classes) + " classes";
  return o;
}

struct SweepPoint {
  std::size_t naive_terms = 0, naive_circuits = 0, reduced_circuits = 0;
};

SweepPoint sweep_point(Mapping kind, std::size_t r, const char* syms) {
  const Projector proj(Encoding(EncodingSpec::make(kind, r)), parse_symmetries(syms));
  const auto sets = rdm_measurement_sets(2, r / 2, proj);
  return {without_identity(sets.naive).size(), circuit_count(sets.naive), circuit_count(sets.reduced)};
}

Outcome grouping_counts() {
  Outcome o;
  const auto h2 = sweep_point(Mapping::JordanWigner, 4, "n,sz");
  o.require(h2.naive_circuits == 25 && h2.reduced_circuits == 9,
            "H2 circuits " + std::to_string(h2.naive_circuits) + "/" + std::to_string(h2.reduced_circuits));
  std::size_t instances = 0;
  for (auto kind : {Mapping::JordanWigner, Mapping::Parity, Mapping::BravyiKitaev}) {
    for (const char* syms : {"none", "n", "n,sz"}) {
      for (std::size_t r = 4; r <= 16; r += 2) {
        const auto p = sweep_point(kind, r, syms);
        o.require(p.reduced_circuits <= p.naive_circuits,
                  to_string(kind) + " " + syms + " r=" + std::to_string(r));
        ++instances;
      }
    }
  }
  if (o.pass) o.detail = "25/9, " + std::to_string(instances) + " instances";
  return o;
}

Outcome scaling_exponents() {
  Outcome o;
  double exponents[2] = {0, 0};
  const char* series[2] = {"none", "n,sz"};
  for (int s = 0; s < 2; ++s) {
    std::vector<std::pair<double, double>> points;
    for (std::size_t r = 4; r <= 16; r += 2) {
      const auto p = sweep_point(Mapping::JordanWigner, r, series[s]);
      o.require(static_cast<double>(p.naive_terms) / p.reduced_circuits > 1.0 &&
                    static_cast<double>(p.naive_terms) / p.naive_circuits > 1.0,
                std::string("ratio at r=") + std::to_string(r));
      points.emplace_back(static_cast<double>(r), static_cast<double>(p.reduced_circuits));
    }
    exponents[s] = scaling_fit(points).exponent;
  }
  o.require(exponents[1] < exponents[0], "exponents " + fmt(exponents[0]) + " vs " + fmt(exponents[1]));
  if (o.pass) o.detail = "n " + fmt(exponents[0]) + " -> " + fmt(exponents[1]);
  return o;
}

Outcome noisy_tomography() {
  Outcome o;
  const auto report = run_experiment(ExperimentConfig{});
  std::map<double, const LevelReport*> by_level;
  for (const auto& l : report.levels) by_level[l.level] = &l;
  const double inf = std::numeric_limits<double>::infinity();
  for (double lv : {0.0, 1.0, 2.0, 3.0, 4.0, inf}) {
    o.require(by_level.count(lv) && by_level[lv]->ideal_vs_naive && by_level[lv]->naive_vs_reduced,
              "missing level " + fmt(lv));
  }
  if (!o.pass) return o;
  const auto& top = *by_level[inf];
  o.require(top.ideal_vs_naive->mean >= 0.015 && top.ideal_vs_naive->mean <= 0.045,
            "n=inf ideal vs naive " + fmt(top.ideal_vs_naive->mean));
  o.require(top.naive_vs_reduced->mean >= 0.03 && top.naive_vs_reduced->mean <= 0.08,
            "n=inf naive vs reduced " + fmt(top.naive_vs_reduced->mean));
  const double n0 = by_level[0.0]->ideal_vs_naive->mean;
  o.require(n0 >= 0.4 && n0 <= 1.0, "n=0 ideal vs naive " + fmt(n0));
  for (double lv = 0; lv <= 4; ++lv) {
    const auto& l = *by_level[lv];
    o.require(l.naive_vs_reduced->mean >= 0.02 && l.naive_vs_reduced->mean <= 0.10,
              "naive vs reduced at n=" + fmt(lv) + " " + fmt(l.naive_vs_reduced->mean));
    if (lv < 4) {
      const auto& next = *by_level[lv + 1];
      const double sigma = std::max(l.ideal_vs_naive->std, next.ideal_vs_naive->std);
      o.require(next.ideal_vs_naive->mean < l.ideal_vs_naive->mean + sigma, "not decreasing after n=" + fmt(lv));
    }
  }
  if (o.pass) {
    o.detail = "n=0 " + fmt(n0) + ", n=inf " + fmt(top.ideal_vs_naive->mean) + " / " +
               fmt(top.naive_vs_reduced->mean);
  }
  return o;
}

Outcome channel_properties() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double t1 = 20 + 200 * u(rng);
    const double t2 = t1 * (0.05 + 1.9 * u(rng));
    const auto ch = thermal_relaxation_channel(t1, t2, 0.01 + 2 * u(rng), 0.2 * u(rng));
    o.require(ch.completeness_error() < 1e-10, "relaxation completeness");
    o.require(depolarizing_channel(u(rng), 1 + trial % 2).completeness_error() < 1e-10, "depolarizing completeness");
  }

  auto random_psi = [&](std::size_t dim) {
    Eigen::VectorXcd psi(dim);
    for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = oracle::random_complex(rng);
    return Eigen::VectorXcd(psi / psi.norm());
  };
  auto random_unitary = [&](std::size_t dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = oracle::random_complex(rng);
    }
    return Eigen::MatrixXcd(Eigen::HouseholderQR<Eigen::MatrixXcd>(m).householderQ());
  };
  auto rho = DensityMatrix::from_state(random_psi(8));
  for (int step = 0; step < 10000 && o.pass; ++step) {
    const std::size_t a = rng() % 3, b = (a + 1 + rng() % 2) % 3;
    if (rng() & 1) {
      apply_unitary(rho, random_unitary(4), {a, b});
      apply_channel(rho, depolarizing_channel(u(rng), 2), {a, b});
      const auto relax = relaxation_channel_sample(u(rng), u(rng), u(rng), u(rng));
      apply_channel(rho, relax, {a});
      apply_channel(rho, relax, {b});
    } else {
      apply_unitary(rho, random_unitary(2), {a});
      apply_channel(rho, depolarizing_channel(4.0 / 3.0 * u(rng), 1), {a});
    }
    try {
      rho.check(1e-10, 1e-9);
    } catch (const std::exception& e) {
      o.require(false, "density matrix invariants at step " + std::to_string(step));
    }
  }

  for (double ratio : {0.9999, 0.999, 0.99}) {
    const auto p = relaxation_params(92.8, 92.8 * ratio, 0.3, 0.02);
    const auto mixture = thermal_relaxation_mixture(p), choi = thermal_relaxation_choi(p);
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::VectorXcd psi = random_psi(2);
      const Eigen::MatrixXcd r = psi * psi.adjoint();
      Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(2, 2), y = Eigen::MatrixXcd::Zero(2, 2);
      for (const auto& k : mixture.kraus) x += k * r * k.adjoint();
      for (const auto& k : choi.kraus) y += k * r * k.adjoint();
      o.require((x - y).cwiseAbs().maxCoeff() < 1e-8, "Choi and mixture disagree");
    }
  }

  const auto relax = thermal_relaxation_channel(93.6, 133.3, 0.035, 0.0);
  o.require(std::abs(depolarizing_strength(average_fidelity(relax), relax, 2).lambda) < 1e-12,
            "lambda at the relaxation fidelity");
  const auto relax2 = tensor(relax, relax);
  o.require(std::abs(depolarizing_strength(average_fidelity(relax2), relax2, 4).lambda) < 1e-12,
            "two-qubit lambda at the relaxation fidelity");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"two_mode_projection_golden", 1.0, two_mode_golden},
      {"count_table_reproduction", 30.0, published_counts},
      {"reconstruction_oracle_equivalence", 120.0, reconstruction_equivalence},
      {"dense_rank_minimality", 60.0, dense_rank_minimality},
      {"grouping_circuit_counts", 120.0, grouping_counts},
      {"scaling_exponent_property", 300.0, scaling_exponents},
      {"noisy_tomography_statistics", 600.0, noisy_tomography},
      {"channel_property_suite", 60.0, channel_properties},
  };
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.limit_s) {
      o.pass = false;
      o.detail = "took " + fmt(elapsed) + " s, limit " + fmt(c.limit_s) + " s";
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << " (" << std::fixed << std::setprecision(2) << elapsed
              << " s)" << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
    std::cout.unsetf(std::ios::fixed);
  }
  return all ? 0 : 1;
}
