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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "checks.hpp"
#include "spt/cli.hpp"
#include "spt/errors.hpp"
#include "spt/json_io.hpp"

using namespace spt;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "spt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "spt_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T, class Read>
T reparse(const T& value, Read read) {
  return read(parse_json_text(to_json(value).dump()));
}

}  // namespace

TEST(JsonRoundTrip, OperatorsAndBases) {
  std::mt19937_64 rng(61);
  PauliSum s(5);
  for (int t = 0; t < 6; ++t) s.add(PauliString::from_letters(oracle::random_letters(5, rng), oracle::random_complex(rng)));
  EXPECT_TRUE(reparse(s, pauli_sum_from_json).approx_equal(s, 0.0));

  const auto op = checks::two_mode_hopping({1.5, -0.25}, {0.0, 2.0});
  EXPECT_TRUE(reparse(op, fermion_operator_from_json).structurally_equal(op, 0.0));

  const auto projected = project(PauliString::from_letters("XZYIZ", {0.5, 0.5}), parse_symmetries("n"));
  const auto back = reparse(projected, projected_operator_from_json);
  EXPECT_EQ(back.n_qubits, projected.n_qubits);
  EXPECT_EQ(back.support, projected.support);
  EXPECT_EQ(back.z_tail, projected.z_tail);
  EXPECT_EQ(back.entries, projected.entries);

  const Projector proj(Encoding(EncodingSpec::make(Mapping::JordanWigner, 4)), parse_symmetries("n,sz"));
  const auto spec = class_representative(1, 1, 1, 1);
  const auto parts = hermitian_components(rdm_element_operator(spec, 2));
  const auto basis = reduce_measurements({parts.real_part, parts.imag_part}, proj);
  EXPECT_EQ(reparse(basis, reduced_basis_from_json), basis);

  const auto rows = count_table(2, Mapping::JordanWigner, parse_symmetries("n,sz"));
  EXPECT_EQ(reparse(rows, count_rows_from_json), rows);
}

TEST(JsonRoundTrip, GroupingDeviceAndReport) {
  GroupingRecord g;
  for (const char* s : {"XXI", "XIZ", "ZZI", "IYY"}) g.strings.push_back(PauliString::from_letters(s));
  g.grouping = clique_cover(build_graph(g.strings));
  EXPECT_EQ(reparse(g, grouping_from_json), g);

  const auto device = DeviceParameters::bogota();
  EXPECT_EQ(reparse(device, device_from_json), device);

  ExperimentReport report;
  report.states = 2;
  report.shots = 10;
  report.seed = 7;
  report.naive_circuits = 25;
  report.reduced_circuits = 9;
  report.levels.push_back({0.0, 1.0, NormStats{0.1, 0.01}, std::nullopt, NormStats{0.3, 0.2}});
  report.levels.push_back({std::numeric_limits<double>::infinity(), 0.0, std::nullopt, NormStats{1e-3, 2e-4}, std::nullopt});
  EXPECT_EQ(reparse(report, report_from_json), report);
}

TEST(JsonRoundTrip, MalformedInputsAreFormatErrors) {
  EXPECT_THROW(parse_json_text("{"), FormatError);
  EXPECT_THROW(pauli_sum_from_json(parse_json_text(R"({"n_qubits":2,"terms":[{"string":"XQ"}]})")), FormatError);
  EXPECT_THROW(pauli_sum_from_json(parse_json_text(R"({"n_qubits":3,"terms":[{"string":"XX"}]})")), FormatError);
  EXPECT_THROW(fermion_operator_from_json(parse_json_text(R"({"n_modes":2,"terms":[{"factors":[[0,"*"]]}]})")),
               FormatError);
  EXPECT_THROW(fermion_operator_from_json(parse_json_text(R"({"n_modes":2,"terms":[{"factors":[[5,"+"]]}]})")),
               FormatError);
  EXPECT_THROW(read_json_file("/nonexistent/spt.json"), FormatError);
}

TEST(Cli, TableText) {
  const auto r = run({"table", "--krdm", "1", "--mapping", "jw", "--symmetries", "n,sz"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ᾱᾱ 2 4 2"), std::string::npos);
  EXPECT_NE(r.out.find("1 αβ - - 0"), std::string::npos);
  const auto json_rows = run({"table", "--krdm", "2", "--format", "json"});
  EXPECT_EQ(count_rows_from_json(parse_json_text(json_rows.out)),
            count_table(2, Mapping::JordanWigner, parse_symmetries("n,sz")));
}

TEST(Cli, ReduceWritesTheTwoStringBasis) {
  const auto input = scratch("hopping.json"), output = scratch("reduced.json");
  write_text_file(input.string(), to_json(checks::two_mode_hopping(1.0, 1.0)).dump());
  const auto r = run({"reduce", "--input", input.string(), "--mapping", "jw", "--symmetries", "n", "--out",
                      output.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto basis = reduced_basis_from_json(read_json_file(output.string()));
  ASSERT_EQ(basis.measurements.size(), 2u);
  EXPECT_EQ(basis.measurements[0].letters(), "XX");
  EXPECT_EQ(basis.measurements[1].letters(), "XY");
  EXPECT_NEAR(std::abs(basis.coefficients[0][0] - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(basis.coefficients[0][1]), 0.0, 1e-12);
}

TEST(Cli, GroupHandlesEmptyAndDuplicateInput) {
  const auto empty = scratch("empty.json");
  write_text_file(empty.string(), "{}");
  const auto r = run({"group", "--input", empty.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(grouping_from_json(parse_json_text(r.out)).grouping.circuit_count(), 0u);

  const auto strings = scratch("strings.json");
  write_text_file(strings.string(), R"({"strings":["XX","XX","II","XI","ZZ"]})");
  const auto g = run({"group", "--input", strings.string()});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto record = grouping_from_json(parse_json_text(g.out));
  EXPECT_EQ(record.strings.size(), 3u);
  EXPECT_EQ(record.grouping.circuit_count(), 2u);
}

TEST(Cli, ScalingRows) {
  const auto r = run({"scaling", "--krdm", "2", "--mapping", "jw", "--symmetries", "n", "--qubits", "4:8:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "mapping,symmetries,r,naive_terms,naive_circuits,reduced_terms,reduced_circuits,ratio,fitted_n");
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> cells;
    std::stringstream cs(line);
    std::string cell;
    while (std::getline(cs, cell, ',')) cells.push_back(cell);
    ASSERT_GE(cells.size(), 8u);
    EXPECT_GE(std::stod(cells[7]), 1.0) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 3);

  const auto h2 = run({"scaling", "--mapping", "jw", "--symmetries", "n+sz", "--qubits", "4"});
  EXPECT_NE(h2.out.find("jw,n+sz,4,50,25,26,9,"), std::string::npos) << h2.out;
  EXPECT_EQ(run({"scaling", "--mapping", "jw", "--symmetries", "n", "--qubits", "4", "--fit"}).code, 2);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"table", "--krdm", "1", "--bogus"}).code, 1);
  EXPECT_EQ(run({"table", "--krdm", "1", "--mapping", "ternary"}).code, 1);
  EXPECT_EQ(run({"table", "--krdm", "1", "--symmetries", "s2"}).code, 1);
  EXPECT_EQ(run({"group", "--input", "/nonexistent/spt.json"}).code, 2);
  EXPECT_EQ(run({"scaling", "--qubits", "5"}).code, 1);
}

TEST(Cli, SimulateIsDeterministic) {
  const auto a = scratch("report_a.json"), b = scratch("report_b.json");
  const std::vector<std::string> base = {"simulate", "--levels", "0,inf", "--states", "2", "--shots", "64", "--seed", "5"};
  auto args_a = base, args_b = base;
  args_a.insert(args_a.end(), {"--out", a.string()});
  args_b.insert(args_b.end(), {"--out", b.string()});
  ASSERT_EQ(run(args_a).code, 0);
  ASSERT_EQ(run(args_b).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
  const auto report = report_from_json(read_json_file(a.string()));
  EXPECT_EQ(report.levels.size(), 2u);
  EXPECT_EQ(to_json(report).dump(2) + "\n", slurp(a));

  const char* threads = std::getenv("SPT_THREADS");
  const std::string saved_threads = threads ? threads : "";
  auto args_c = base;
  args_c.insert(args_c.end(), {"--out", scratch("report_c.json").string()});
  setenv("SPT_THREADS", "3", 1);
  ASSERT_EQ(run(args_c).code, 0);
  if (threads) {
    setenv("SPT_THREADS", saved_threads.c_str(), 1);
  } else {
    unsetenv("SPT_THREADS");
  }
  EXPECT_EQ(slurp(scratch("report_c.json")), slurp(a));

  const auto warned = run({"simulate", "--levels", "inf", "--states", "1", "--shots", "0", "--mapping", "bk"});
  EXPECT_EQ(warned.code, 0);
  EXPECT_NE(warned.err.find("warning"), std::string::npos);
}

TEST(Cli, SeedRequiredUnderCi) {
  const char* previous = std::getenv("CI");
  const std::string saved = previous ? previous : "";
  setenv("CI", "1", 1);
  EXPECT_EQ(run({"simulate", "--levels", "inf", "--states", "1", "--shots", "0"}).code, 1);
  EXPECT_EQ(run({"simulate", "--levels", "inf", "--states", "1", "--shots", "0", "--seed", "3"}).code, 0);
  if (previous) {
    setenv("CI", saved.c_str(), 1);
  } else {
    unsetenv("CI");
  }
}
