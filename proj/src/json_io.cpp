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

#include "spt/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "spt/errors.hpp"

namespace spt {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T get(const json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return get<T>(j, key);
}

cplx complex_of(const json& j) { return {get_or<double>(j, "re", 0.0), get_or<double>(j, "im", 0.0)}; }

json complex_json(cplx c) { return {{"re", c.real()}, {"im", c.imag()}}; }

std::vector<std::size_t> indices_of(const json& j) {
  try {
    return j.get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("expected a list of indices: ") + e.what());
  }
}

json stats_json(const std::optional<NormStats>& s) {
  if (!s) return nullptr;
  return {{"mean", s->mean}, {"std", s->std}};
}

std::optional<NormStats> stats_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return NormStats{get<double>(j.at(key), "mean"), get<double>(j.at(key), "std")};
}

}  // namespace

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << text;
  if (!out) throw FormatError("failed writing '" + path + "'");
}

json pauli_string_to_json(const PauliString& p) {
  return {{"string", p.letters()}, {"re", p.coeff().real()}, {"im", p.coeff().imag()}};
}

PauliString pauli_string_from_json(const json& j) {
  try {
    return PauliString::from_letters(get<std::string>(j, "string"), complex_of(j));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const PauliSum& s) {
  json terms = json::array();
  for (const auto& p : s.strings()) terms.push_back(pauli_string_to_json(p));
  return {{"n_qubits", s.n_qubits()}, {"terms", terms}};
}

PauliSum pauli_sum_from_json(const json& j) {
  if (j.is_array() && j.empty()) return PauliSum(0);
  const json& terms = j.is_object() && j.contains("terms") ? j.at("terms") : json::array();
  if (!terms.is_array()) throw FormatError("'terms' must be an array");
  std::size_t n = get_or<std::size_t>(j, "n_qubits", 0);
  if (n == 0 && !terms.empty()) n = get<std::string>(terms.front(), "string").size();
  PauliSum s(n);
  for (const auto& t : terms) {
    const auto p = pauli_string_from_json(t);
    if (p.n_qubits() != n) throw FormatError("term '" + p.letters() + "' does not have n_qubits letters");
    s.add(p);
  }
  return s;
}

json to_json(const FermionOperator& op) {
  json terms = json::array();
  for (const auto& t : op.terms()) {
    json factors = json::array();
    for (const auto& f : t.factors) factors.push_back(json::array({f.mode, f.dagger ? "+" : "-"}));
    terms.push_back({{"factors", factors}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  return {{"n_modes", op.n_modes()}, {"terms", terms}};
}

FermionOperator fermion_operator_from_json(const json& j) {
  FermionOperator op(get<std::size_t>(j, "n_modes"));
  const json& terms = field(j, "terms");
  if (!terms.is_array()) throw FormatError("'terms' must be an array");
  for (const auto& t : terms) {
    LadderTerm term;
    term.coeff = complex_of(t);
    const json& factors = field(t, "factors");
    if (!factors.is_array()) throw FormatError("'factors' must be an array");
    for (const auto& f : factors) {
      if (!f.is_array() || f.size() != 2 || !f[0].is_number_unsigned() || !f[1].is_string()) {
        throw FormatError("each factor must be [mode, \"+\" or \"-\"]");
      }
      const auto kind = f[1].get<std::string>();
      if (kind != "+" && kind != "-") throw FormatError("factor kind must be \"+\" or \"-\"");
      term.factors.push_back({f[0].get<std::size_t>(), kind == "+"});
    }
    try {
      op.add_term(std::move(term));
    } catch (const RangeError& e) {
      throw FormatError(e.what());
    }
  }
  return op;
}

std::vector<FermionOperator> fermion_targets_from_json(const json& j) {
  std::vector<FermionOperator> out;
  const json* list = &j;
  if (j.is_object() && j.contains("targets")) list = &j.at("targets");
  if (list->is_array()) {
    for (const auto& item : *list) out.push_back(fermion_operator_from_json(item));
  } else {
    out.push_back(fermion_operator_from_json(*list));
  }
  return out;
}

json to_json(const ProjectedOperator& op) {
  json entries = json::array();
  for (const auto& [key, a] : op.entries) {
    entries.push_back({{"row", key.first.to_string()}, {"col", key.second.to_string()}, {"re", a.real()}, {"im", a.imag()}});
  }
  return {{"n_qubits", op.n_qubits}, {"support", op.support}, {"z_tail", op.z_tail.indices()}, {"entries", entries}};
}

ProjectedOperator projected_operator_from_json(const json& j) {
  ProjectedOperator op;
  op.n_qubits = get<std::size_t>(j, "n_qubits");
  op.support = indices_of(field(j, "support"));
  op.z_tail = Bits(op.n_qubits);
  for (auto q : indices_of(field(j, "z_tail"))) {
    if (q >= op.n_qubits) throw FormatError("z_tail qubit out of range");
    op.z_tail.set(q);
  }
  for (const auto& e : field(j, "entries")) {
    const auto row = get<std::string>(e, "row"), col = get<std::string>(e, "col");
    if (row.size() != op.support.size() || col.size() != op.support.size()) {
      throw FormatError("entry bit strings must match the support size");
    }
    op.entries[{Bits::from_string(row), Bits::from_string(col)}] = complex_of(e);
  }
  return op;
}

json to_json(const ReducedBasis& b) {
  json measurements = json::array();
  for (const auto& m : b.measurements) measurements.push_back(pauli_string_to_json(m));
  json targets = json::array();
  for (std::size_t t = 0; t < b.coefficients.size(); ++t) {
    json coeffs = json::array();
    for (auto c : b.coefficients[t]) coeffs.push_back(complex_json(c));
    targets.push_back({{"id", t}, {"coeffs", coeffs}});
  }
  return {{"measurements", measurements}, {"targets", targets}, {"residual", b.residual}};
}

ReducedBasis reduced_basis_from_json(const json& j) {
  ReducedBasis b;
  for (const auto& m : field(j, "measurements")) b.measurements.push_back(pauli_string_from_json(m));
  for (const auto& t : field(j, "targets")) {
    std::vector<cplx> row;
    for (const auto& c : field(t, "coeffs")) row.push_back(complex_of(c));
    if (row.size() != b.measurements.size()) throw FormatError("coefficient count differs from measurement count");
    b.coefficients.push_back(std::move(row));
  }
  b.residual = get_or<double>(j, "residual", 0.0);
  return b;
}

json to_json(const std::vector<CountTableRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"k", r.k},
                   {"spin_class", r.spin_class},
                   {"q_sites", r.q_sites ? json(*r.q_sites) : json(nullptr)},
                   {"naive", r.naive ? json(*r.naive) : json(nullptr)},
                   {"reduced", r.reduced}});
  }
  return out;
}

std::vector<CountTableRow> count_rows_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("count table must be an array");
  std::vector<CountTableRow> rows;
  for (const auto& r : j) {
    CountTableRow row;
    row.k = get<std::size_t>(r, "k");
    row.spin_class = get<std::string>(r, "spin_class");
    if (!field(r, "q_sites").is_null()) row.q_sites = get<std::size_t>(r, "q_sites");
    if (!field(r, "naive").is_null()) row.naive = get<std::size_t>(r, "naive");
    row.reduced = get<std::size_t>(r, "reduced");
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const GroupingRecord& g) {
  json groups = json::array();
  for (const auto& members : g.grouping.groups) {
    std::vector<PauliString> strings;
    json letters = json::array();
    for (auto i : members) {
      strings.push_back(g.strings.at(i));
      letters.push_back(g.strings.at(i).letters());
    }
    groups.push_back({{"basis", measurement_basis(strings).letters()}, {"indices", members}, {"members", letters}});
  }
  json strings = json::array();
  for (const auto& s : g.strings) strings.push_back(s.letters());
  return {{"strings", strings}, {"circuit_count", g.grouping.circuit_count()}, {"groups", groups}};
}

GroupingRecord grouping_from_json(const json& j) {
  GroupingRecord g;
  for (const auto& s : field(j, "strings")) {
    if (!s.is_string()) throw FormatError("strings must be letter strings");
    g.strings.push_back(PauliString::from_letters(s.get<std::string>()));
  }
  for (const auto& grp : field(j, "groups")) {
    auto idx = indices_of(field(grp, "indices"));
    for (auto i : idx) {
      if (i >= g.strings.size()) throw FormatError("group index out of range");
    }
    g.grouping.groups.push_back(std::move(idx));
  }
  if (get<std::size_t>(j, "circuit_count") != g.grouping.circuit_count()) {
    throw FormatError("circuit_count differs from the number of groups");
  }
  return g;
}

json to_json(const DeviceParameters& d) {
  json qubits = json::array();
  for (const auto& q : d.qubits) {
    qubits.push_back({{"frequency_ghz", q.frequency_ghz},
                      {"u2_error", q.u2_error},
                      {"u3_error", q.u3_error},
                      {"ro_0_given_1", q.ro_0_given_1},
                      {"ro_1_given_0", q.ro_1_given_0},
                      {"t1_us", q.t1_us},
                      {"t2_us", q.t2_us ? json(*q.t2_us) : json(nullptr)}});
  }
  json cnots = json::array();
  for (const auto& c : d.cnots) {
    cnots.push_back({{"control", c.control}, {"target", c.target}, {"error", c.error}, {"length_ns", c.length_ns}});
  }
  return {{"qubits", qubits},
          {"cnots", cnots},
          {"u2_length_ns", d.u2_length_ns},
          {"u3_length_ns", d.u3_length_ns},
          {"temperature_k", d.temperature_k}};
}

DeviceParameters device_from_json(const json& j) {
  DeviceParameters d;
  for (const auto& q : field(j, "qubits")) {
    QubitCalibration c;
    c.frequency_ghz = get<double>(q, "frequency_ghz");
    c.u2_error = get<double>(q, "u2_error");
    c.u3_error = get<double>(q, "u3_error");
    c.ro_0_given_1 = get<double>(q, "ro_0_given_1");
    c.ro_1_given_0 = get<double>(q, "ro_1_given_0");
    c.t1_us = get<double>(q, "t1_us");
    if (q.contains("t2_us") && !q.at("t2_us").is_null()) c.t2_us = get<double>(q, "t2_us");
    d.qubits.push_back(c);
  }
  for (const auto& c : field(j, "cnots")) {
    d.cnots.push_back({get<std::size_t>(c, "control"), get<std::size_t>(c, "target"), get<double>(c, "error"),
                       get<double>(c, "length_ns")});
  }
  d.u2_length_ns = get_or<double>(j, "u2_length_ns", 35.0);
  d.u3_length_ns = get_or<double>(j, "u3_length_ns", 71.0);
  d.temperature_k = get_or<double>(j, "temperature_k", 0.020);
  return d;
}

json to_json(const ExperimentReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"level", std::isinf(l.level) ? json("inf") : json(l.level)},
                      {"scale", l.scale},
                      {"ideal_vs_naive", stats_json(l.ideal_vs_naive)},
                      {"ideal_vs_reduced", stats_json(l.ideal_vs_reduced)},
                      {"naive_vs_reduced", stats_json(l.naive_vs_reduced)}});
  }
  return {{"states", r.states},
          {"shots", r.shots},
          {"seed", r.seed},
          {"naive_circuits", r.naive_circuits},
          {"reduced_circuits", r.reduced_circuits},
          {"levels", levels}};
}

ExperimentReport report_from_json(const json& j) {
  ExperimentReport r;
  r.states = get<std::size_t>(j, "states");
  r.shots = get<std::size_t>(j, "shots");
  r.seed = get<std::uint64_t>(j, "seed");
  r.naive_circuits = get<std::size_t>(j, "naive_circuits");
  r.reduced_circuits = get<std::size_t>(j, "reduced_circuits");
  for (const auto& l : field(j, "levels")) {
    LevelReport lr;
    const json& lv = field(l, "level");
    if (lv.is_string() && lv.get<std::string>() == "inf") {
      lr.level = std::numeric_limits<double>::infinity();
    } else {
      lr.level = get<double>(l, "level");
    }
    lr.scale = get<double>(l, "scale");
    lr.ideal_vs_naive = stats_from(l, "ideal_vs_naive");
    lr.ideal_vs_reduced = stats_from(l, "ideal_vs_reduced");
    lr.naive_vs_reduced = stats_from(l, "naive_vs_reduced");
    r.levels.push_back(lr);
  }
  return r;
}

}  // namespace spt
