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

#include <algorithm>
#include <random>

#include "checks.hpp"
#include "oracle.hpp"
#include "spt/errors.hpp"
#include "spt/reduce.hpp"

using namespace spt;

namespace {

const Mapping kMappings[] = {Mapping::JordanWigner, Mapping::Parity, Mapping::BravyiKitaev};

}  // namespace

TEST(Reduce, TwoModeHoppingEncodesToPrintedPauliSum) {
  const cplx i(0, 1);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const cplx c1 = oracle::random_complex(rng), c2 = oracle::random_complex(rng);
    const auto encoded = encode(checks::two_mode_hopping(c1, c2), EncodingSpec::make(Mapping::JordanWigner, 2));
    PauliSum expected(2);
    expected.add(PauliString::from_letters("XX", 0.25 * (c1 + c2)));
    expected.add(PauliString::from_letters("YY", 0.25 * (c1 + c2)));
    expected.add(PauliString::from_letters("XY", 0.25 * i * (c1 - c2)));
    expected.add(PauliString::from_letters("YX", -0.25 * i * (c1 - c2)));
    EXPECT_TRUE(encoded.approx_equal(expected, 1e-15));
  }
}

TEST(Reduce, TwoModeHoppingSolvesWithTwoStrings) {
  const cplx i(0, 1);
  std::mt19937_64 rng(32);
  const Projector proj(Encoding(EncodingSpec::make(Mapping::JordanWigner, 2)), parse_symmetries("n"));
  for (int trial = 0; trial < 20; ++trial) {
    const cplx c1 = oracle::random_complex(rng), c2 = oracle::random_complex(rng);
    const auto basis = reduce_measurements({checks::two_mode_hopping(c1, c2)}, proj);
    ASSERT_EQ(basis.measurements.size(), 2u);
    EXPECT_EQ(basis.measurements[0].letters(), "XX");
    EXPECT_EQ(basis.measurements[1].letters(), "XY");
    EXPECT_NEAR(std::abs(basis.coefficients[0][0] - 0.5 * (c1 + c2)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(basis.coefficients[0][1] - 0.5 * (i * c1 - i * c2)), 0.0, 1e-12);
  }
}

TEST(Reduce, EntryAndPauliCoordinatesSelectTheSameStrings) {
  std::mt19937_64 rng(33);
  const std::size_t n = 4;
  for (auto kind : kMappings) {
    const Projector proj(Encoding(EncodingSpec::make(kind, n)), parse_symmetries("n,sz"));
    for (int trial = 0; trial < 20; ++trial) {
      // Only X and Y letters, so every projection lives on all qubits without a Z tail.
      std::vector<PauliString> strings;
      for (int c = 0; c < 8; ++c) {
        std::string s;
        for (std::size_t q = 0; q < n; ++q) s.push_back(rng() & 1 ? 'X' : 'Y');
        strings.push_back(PauliString::from_letters(s, oracle::random_complex(rng)));
      }
      std::vector<ProjectedOperator> entry_form;
      std::vector<PauliSum> pauli_form;
      for (const auto& s : strings) {
        PauliSum sum(n);
        sum.add(s);
        entry_form.push_back(proj.project_sum(sum));
        pauli_form.push_back(proj.project_pauli(s));
      }
      if (kind != Mapping::JordanWigner) {
        bool shared = true;
        for (const auto& e : entry_form) shared = shared && e.support == entry_form.front().support && e.z_tail == entry_form.front().z_tail;
        if (!shared) continue;
      }
      const auto by_entries = vectorize(entry_form);
      const auto by_paulis = vectorize(pauli_form);
      const auto order = selection_order(strings);
      EXPECT_EQ(select_independent(by_entries.vectors, order), select_independent(by_paulis.vectors, order));
    }
  }
}

TEST(Reduce, SolveRejectsTargetsOutsideTheSpan) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(3), b = Eigen::VectorXcd::Zero(3);
  a(0) = 1.0;
  b(1) = 1.0;
  const auto sol = solve({a}, 2.0 * a);
  EXPECT_NEAR(std::abs(sol.x(0) - 2.0), 0.0, 1e-14);
  EXPECT_THROW(solve({a}, b), NotInSpanError);
}

TEST(Reduce, CountTableMatchesPublishedValues) {
  std::map<std::string, CountTableRow> produced;
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto rows = count_table(k, Mapping::JordanWigner, parse_symmetries("n,sz"));
    for (const auto& r : rows) produced[std::to_string(k) + r.spin_class] = r;
    std::size_t expected_rows = 0;
    for (const auto& e : checks::published_counts()) expected_rows += e.k == k;
    EXPECT_EQ(rows.size(), expected_rows);
  }
  for (const auto& e : checks::published_counts()) {
    const auto it = produced.find(std::to_string(e.k) + e.label);
    ASSERT_NE(it, produced.end()) << e.label;
    EXPECT_EQ(it->second.q_sites, e.q_sites) << e.label;
    EXPECT_EQ(it->second.naive, e.naive) << e.label;
    EXPECT_EQ(it->second.reduced, e.reduced) << e.label;
  }
}

TEST(Reduce, CountsMatchDenseProjectorRank) {
  for (std::size_t k = 1; k <= 2; ++k) {
    for (std::size_t na = k; 2 * na >= k; --na) {
      const std::size_t nb = k - na;
      for (std::size_t pa = 0; pa <= na; ++pa) {
        for (std::size_t pb = 0; pb <= nb; ++pb) {
          const auto spec = class_representative(na, nb, pa, pb);
          for (const char* syms : {"none", "n", "n,sz"}) {
            const SymmetrySet set = parse_symmetries(syms);
            const auto rows = count_table(k, Mapping::JordanWigner, set);
            const auto label = classify(spec).label;
            const auto row = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.spin_class == label; });
            if (row == rows.end()) continue;
            EXPECT_EQ(row->reduced, checks::dense_reduced_count(spec, std::ranges::count(set, Symmetry::N) > 0,
                                                                std::ranges::count(set, Symmetry::Sz) > 0))
                << label << " " << syms;
          }
        }
      }
      if (na == 0) break;
    }
  }
}

TEST(Reduce, ReducedReconstructionEqualsNaive) {
  std::mt19937_64 rng(34);
  for (auto kind : kMappings) {
    const auto gap = checks::reconstruction_gap(kind, 2, 5, rng);
    EXPECT_LT(gap.reduced_vs_naive, 1e-10) << to_string(kind);
    EXPECT_LT(gap.naive_vs_fermion, 1e-10) << to_string(kind);
  }
}

TEST(Reduce, ReducedNeverExceedsNaive) {
  for (auto kind : kMappings) {
    for (const char* syms : {"none", "n", "n,sz"}) {
      for (std::size_t k = 1; k <= 2; ++k) {
        for (const auto& r : count_table(k, kind, parse_symmetries(syms))) {
          if (r.naive) {
            EXPECT_LE(r.reduced, *r.naive) << to_string(kind) << " " << syms << " " << r.spin_class;
          }
        }
      }
    }
  }
}

TEST(Reduce, MismatchedSupportsAreRejected) {
  const auto a = project(PauliString::from_letters("XXI"), parse_symmetries("n"));
  const auto b = project(PauliString::from_letters("IXX"), parse_symmetries("n"));
  EXPECT_THROW(vectorize(std::vector<ProjectedOperator>{a, b}), DimensionError);
}
