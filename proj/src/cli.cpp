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

#include "spt/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spt/encode.hpp"
#include "spt/errors.hpp"
#include "spt/group.hpp"
#include "spt/json_io.hpp"
#include "spt/noisesim.hpp"
#include "spt/reduce.hpp"
#include "spt/symproj.hpp"

namespace spt {
namespace {

class UsageError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string full_precision(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string series_label(const SymmetrySet& syms) {
  auto label = to_string(syms);
  for (auto& c : label) {
    if (c == ',') c = '+';
  }
  return label;
}

std::size_t parse_count(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size() || v < 0) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
}

std::vector<std::size_t> parse_qubit_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty() || parts.size() > 3) throw UsageError("qubit range must be start[:stop[:step]]");
  const std::size_t start = parse_count(parts[0], "qubit count");
  const std::size_t stop = parts.size() > 1 ? parse_count(parts[1], "qubit count") : start;
  const std::size_t step = parts.size() > 2 ? parse_count(parts[2], "qubit step") : 2;
  if (step == 0 || stop < start) throw UsageError("qubit range '" + text + "' is empty");
  std::vector<std::size_t> out;
  for (std::size_t r = start; r <= stop; r += step) {
    if (r == 0 || r % 2 != 0) throw UsageError("qubit counts must be even and positive");
    out.push_back(r);
  }
  return out;
}

std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> levels;
  for (const auto& item : split(text, ',')) {
    if (item == "inf") {
      levels.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !(v >= 0)) throw std::invalid_argument(item);
      levels.push_back(v);
    } catch (const std::exception&) {
      throw UsageError("invalid noise level '" + item + "'");
    }
  }
  if (levels.empty()) throw UsageError("no noise levels given");
  return levels;
}

std::vector<PauliString> read_pauli_strings(const std::string& path) {
  const auto text = [&] {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) return {};
  const auto j = parse_json_text(text);
  std::vector<PauliString> strings;
  const json* list = &j;
  if (j.is_object() && j.contains("strings")) list = &j.at("strings");
  if (list->is_array() && std::all_of(list->begin(), list->end(), [](const json& e) { return e.is_string(); })) {
    for (const auto& s : *list) {
      try {
        strings.push_back(PauliString::from_letters(s.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
      }
    }
  } else {
    strings = pauli_sum_from_json(j).strings();
  }
  std::vector<PauliString> unique;
  std::set<PauliKey> seen;
  for (const auto& s : without_identity(strings)) {
    if (!unique.empty() && s.n_qubits() != unique.front().n_qubits()) {
      throw FormatError("strings have different lengths");
    }
    if (seen.insert(key_of(s)).second) unique.push_back(s.with_coeff(1.0));
  }
  return unique;
}

int cmd_reduce(const std::string& input, const std::string& mapping, const std::string& order,
               const std::string& symmetries, const std::string& out_path, std::ostream& out) {
  const auto targets = fermion_targets_from_json(read_json_file(input));
  if (targets.empty()) throw FormatError("no target operators in input");
  const std::size_t n_modes = targets.front().n_modes();
  for (const auto& t : targets) {
    if (t.n_modes() != n_modes) throw FormatError("targets have different mode counts");
  }
  const Projector proj(Encoding(EncodingSpec::make(parse_mapping(mapping), n_modes, parse_mode_order(order))),
                       parse_symmetries(symmetries));
  emit(to_json(reduce_measurements(targets, proj)).dump(2) + "\n", out_path, out);
  return 0;
}

std::string optional_cell(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "-"; }

int cmd_table(std::size_t k, const std::string& mapping, const std::string& order, const std::string& symmetries,
              const std::string& format, std::ostream& out) {
  if (k < 1 || k > 3) throw UsageError("--krdm must be 1, 2 or 3");
  const auto rows = count_table(k, parse_mapping(mapping), parse_symmetries(symmetries), parse_mode_order(order));
  if (format == "json") {
    out << to_json(rows).dump(2) << "\n";
  } else if (format == "csv") {
    out << "k,spin_class,q_sites,naive,reduced\n";
    for (const auto& r : rows) {
      out << r.k << "," << r.spin_class << "," << (r.q_sites ? std::to_string(*r.q_sites) : "") << ","
          << (r.naive ? std::to_string(*r.naive) : "") << "," << r.reduced << "\n";
    }
  } else {
    out << "k class q naive reduced\n";
    for (const auto& r : rows) {
      out << r.k << " " << r.spin_class << " " << optional_cell(r.q_sites) << " " << optional_cell(r.naive) << " "
          << r.reduced << "\n";
    }
  }
  return 0;
}

int cmd_group(const std::string& input, const std::string& out_path, std::ostream& out) {
  GroupingRecord record;
  record.strings = read_pauli_strings(input);
  record.grouping = clique_cover(build_graph(record.strings));
  emit(to_json(record).dump(2) + "\n", out_path, out);
  return 0;
}

struct ScalingRow {
  std::string mapping;
  std::string symmetries;
  std::size_t r = 0;
  std::size_t naive_terms = 0;
  std::size_t naive_circuits = 0;
  std::size_t reduced_terms = 0;
  std::size_t reduced_circuits = 0;
  std::optional<double> fitted_n;
};

int cmd_scaling(std::size_t k, const std::string& mappings, const std::string& series, const std::string& qubits,
                const std::string& order, const std::string& csv_path, bool fit, std::ostream& out,
                std::ostream& err) {
  if (k < 1 || k > 3) throw UsageError("--krdm must be 1, 2 or 3");
  std::vector<Mapping> mapping_list;
  for (const auto& m : split(mappings, ',')) mapping_list.push_back(parse_mapping(m));
  std::vector<SymmetrySet> series_list;
  for (const auto& s : split(series, ',')) series_list.push_back(parse_symmetries(s));
  const auto sizes = parse_qubit_range(qubits);
  const auto mode_order = parse_mode_order(order);

  std::vector<ScalingRow> rows;
  for (auto mapping : mapping_list) {
    for (const auto& syms : series_list) {
      const std::size_t first = rows.size();
      std::vector<std::pair<double, double>> points;
      for (auto r : sizes) {
        const Projector proj(Encoding(EncodingSpec::make(mapping, r, mode_order)), syms);
        const auto sets = rdm_measurement_sets(k, r / 2, proj);
        ScalingRow row;
        row.mapping = to_string(mapping);
        row.symmetries = series_label(syms);
        row.r = r;
        row.naive_terms = without_identity(sets.naive).size();
        row.naive_circuits = circuit_count(sets.naive);
        row.reduced_terms = without_identity(sets.reduced).size();
        row.reduced_circuits = circuit_count(sets.reduced);
        points.emplace_back(static_cast<double>(r), static_cast<double>(row.reduced_circuits));
        rows.push_back(row);
      }
      if (fit) {
        const auto result = scaling_fit(points);
        for (std::size_t i = first; i < rows.size(); ++i) rows[i].fitted_n = result.exponent;
        err << to_string(mapping) << " " << series_label(syms) << ": circuits ~ r^" << std::setprecision(4)
            << result.exponent << "\n";
      }
    }
  }

  std::ostringstream csv;
  csv << "mapping,symmetries,r,naive_terms,naive_circuits,reduced_terms,reduced_circuits,ratio,fitted_n\n";
  for (const auto& row : rows) {
    const double ratio =
        row.reduced_circuits == 0 ? 0.0 : static_cast<double>(row.naive_terms) / row.reduced_circuits;
    csv << row.mapping << "," << row.symmetries << "," << row.r << "," << row.naive_terms << ","
        << row.naive_circuits << "," << row.reduced_terms << "," << row.reduced_circuits << ","
        << full_precision(ratio) << "," << (row.fitted_n ? full_precision(*row.fitted_n) : "") << "\n";
  }
  emit(csv.str(), csv_path, out);
  return 0;
}

std::string stats_cell(const std::optional<NormStats>& s) {
  if (!s) return "-";
  std::ostringstream o;
  o << std::fixed << std::setprecision(4) << s->mean << "(" << s->std << ")";
  return o.str();
}

int cmd_simulate(ExperimentConfig config, const std::string& params, const std::string& mapping,
                 const std::string& basis, const std::string& format, const std::string& out_path, std::ostream& out,
                 std::ostream& err) {
  if (parse_mapping(mapping) != Mapping::JordanWigner) {
    err << "warning: simulate uses the jw mapping; ignoring --mapping " << mapping << "\n";
  }
  if (basis == "naive") {
    config.mode = BasisMode::Naive;
  } else if (basis == "reduced") {
    config.mode = BasisMode::Reduced;
  } else {
    config.mode = BasisMode::Both;
  }
  if (!params.empty()) {
    config.device = device_from_json(read_json_file(params));
  }
  config.device.validate();
  const auto report = run_experiment(config);
  if (format == "text") {
    std::ostringstream t;
    t << "states " << report.states << " shots " << report.shots << " seed " << report.seed << "\n";
    t << "circuits naive " << report.naive_circuits << " reduced " << report.reduced_circuits << "\n";
    t << "level ideal_vs_naive ideal_vs_reduced naive_vs_reduced\n";
    for (const auto& l : report.levels) {
      t << (std::isinf(l.level) ? std::string("inf") : full_precision(l.level)) << " " << stats_cell(l.ideal_vs_naive)
        << " " << stats_cell(l.ideal_vs_reduced) << " " << stats_cell(l.naive_vs_reduced) << "\n";
    }
    emit(t.str(), out_path, out);
  } else {
    emit(to_json(report).dump(2) + "\n", out_path, out);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry-projected measurement reduction for fermionic RDM tomography", "spt"};
  app.require_subcommand(1);

  std::string input, out_path, mapping = "jw", order = "blocked", symmetries = "n,sz", format = "text";

  auto* reduce = app.add_subcommand("reduce", "Reduce the measurement basis of fermionic target operators");
  reduce->add_option("--input", input, "Target operators (JSON)")->required();
  reduce->add_option("--mapping", mapping, "jw | parity | bk");
  reduce->add_option("--mode-order", order, "blocked | interleaved");
  reduce->add_option("--symmetries", symmetries, "none | n | n,sz");
  reduce->add_option("--out", out_path, "Output file; standard output when omitted");

  std::size_t krdm = 2;
  auto* table = app.add_subcommand("table", "Naive and reduced measurement counts per spin class");
  table->add_option("--krdm", krdm, "RDM order (1, 2 or 3)")->required();
  table->add_option("--mapping", mapping, "jw | parity | bk");
  table->add_option("--mode-order", order, "blocked | interleaved");
  table->add_option("--symmetries", symmetries, "none | n | n,sz");
  table->add_option("--format", format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));

  auto* group = app.add_subcommand("group", "Group Pauli strings into qubit-wise commuting circuits");
  group->add_option("--input", input, "Pauli strings (JSON)")->required();
  group->add_option("--out", out_path, "Output file; standard output when omitted");

  std::string mappings = "jw,parity,bk", series = "none,n,n+sz", qubits = "4:20:2", csv_path;
  bool fit = false;
  auto* scaling = app.add_subcommand("scaling", "Term and circuit counts of the k-RDM versus qubit count");
  scaling->add_option("--krdm", krdm, "RDM order (1, 2 or 3)");
  scaling->add_option("--mapping", mappings, "Comma-separated mappings");
  scaling->add_option("--symmetries", series, "Comma-separated series, symmetries within a series joined by '+'");
  scaling->add_option("--qubits", qubits, "start:stop:step");
  scaling->add_option("--mode-order", order, "blocked | interleaved");
  scaling->add_option("--csv", csv_path, "Output file; standard output when omitted");
  scaling->add_flag("--fit", fit, "Fit circuits ~ r^n per series (needs 3 or more sizes)");

  ExperimentConfig config;
  std::string levels = "0,1,2,3,4,inf", params, basis = "both";
  std::string sim_format = "json";
  auto* simulate = app.add_subcommand("simulate", "Noisy two-electron 2-RDM tomography experiment");
  simulate->add_option("--levels", levels, "Comma-separated noise exponents; inf is noiseless");
  simulate->add_option("--states", config.states, "Number of random ansatz states");
  simulate->add_option("--shots", config.shots, "Shots per circuit; 0 gives exact expectations");
  auto* seed_opt = simulate->add_option("--seed", config.seed, "Random seed");
  simulate->add_option("--params", params, "Device calibration (JSON)");
  simulate->add_option("--mapping", mapping, "Only jw is supported");
  simulate->add_option("--basis", basis, "naive | reduced | both")->check(CLI::IsMember({"naive", "reduced", "both"}));
  simulate->add_option("--format", sim_format, "json | text")->check(CLI::IsMember({"json", "text"}));
  simulate->add_option("--out", out_path, "Output file; standard output when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*reduce) return cmd_reduce(input, mapping, order, symmetries, out_path, out);
    if (*table) return cmd_table(krdm, mapping, order, symmetries, format, out);
    if (*group) return cmd_group(input, out_path, out);
    if (*scaling) return cmd_scaling(krdm, mappings, series, qubits, order, csv_path, fit, out, err);
    if (*simulate) {
      const char* ci = std::getenv("CI");
      if (ci != nullptr && *ci != '\0' && seed_opt->count() == 0) {
        throw UsageError("--seed is required when CI is set");
      }
      config.levels = parse_levels(levels);
      return cmd_simulate(config, params, mapping, basis, sim_format, out_path, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const UnsupportedSymmetryError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace spt
