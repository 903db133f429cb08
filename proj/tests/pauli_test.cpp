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

#include <random>

#include "oracle.hpp"
#include "spt/errors.hpp"
#include "spt/pauli.hpp"

using namespace spt;

namespace {

PauliString random_string(std::size_t n, std::mt19937_64& rng) {
  return PauliString::from_letters(oracle::random_letters(n, rng), oracle::random_complex(rng));
}

bool letters_commute(const std::string& a, const std::string& b) {
  for (std::size_t q = 0; q < a.size(); ++q) {
    if (a[q] != 'I' && b[q] != 'I' && a[q] != b[q]) return false;
  }
  return true;
}

}  // namespace

TEST(PauliString, LettersRoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto letters = oracle::random_letters(1 + trial % 70, rng);
    EXPECT_EQ(PauliString::from_letters(letters).letters(), letters);
  }
  EXPECT_THROW(PauliString::from_letters("XQ"), std::invalid_argument);
}

TEST(PauliString, MatrixMatchesKroneckerProduct) {
  const cplx i(0, 1);
  EXPECT_TRUE(oracle::dense(PauliString::from_letters("Y")).isApprox(oracle::letter_matrix('Y')));
  const auto xz = oracle::dense(PauliString::from_letters("XZ"));
  // Qubit 0 is the low bit: X flips bit 0, Z reads bit 1.
  EXPECT_EQ(xz(1, 0), cplx(1));
  EXPECT_EQ(xz(3, 2), cplx(-1));
  EXPECT_EQ(oracle::dense(PauliString::from_letters("Y"))(1, 0), i);
}

TEST(PauliString, ProductsMatchMatrixProducts) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto p = random_string(n, rng), q = random_string(n, rng);
    const auto pq = multiply(p, q);
    EXPECT_TRUE(oracle::dense(pq).isApprox(oracle::dense(p) * oracle::dense(q), 1e-12)) << p.letters() << q.letters();
  }
}

TEST(PauliString, CommutationMatchesCommutator) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const auto p = random_string(n, rng).with_coeff(1.0), q = random_string(n, rng).with_coeff(1.0);
    const auto a = oracle::dense(p), b = oracle::dense(q);
    EXPECT_EQ(commutes(p, q), (a * b - b * a).norm() < 1e-12);
    EXPECT_EQ(qubitwise_commutes(p, q), letters_commute(p.letters(), q.letters()));
    if (qubitwise_commutes(p, q)) {
      EXPECT_TRUE(commutes(p, q));
    }
  }
}

TEST(PauliString, BasisActionIsTheMatrixColumn) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto p = random_string(n, rng);
    const auto m = oracle::dense(p);
    const std::uint64_t b = rng() % (std::uint64_t{1} << n);
    const auto act = basis_action(p, Bits::from_uint(n, b));
    const auto col = m.col(static_cast<Eigen::Index>(b));
    EXPECT_NEAR(std::abs(col(static_cast<Eigen::Index>(act.out.to_uint())) - act.amplitude), 0.0, 1e-12);
    EXPECT_NEAR(col.norm(), std::abs(act.amplitude), 1e-12);
  }
}

TEST(PauliSum, ArithmeticMatchesMatrices) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 4;
    PauliSum a(n), b(n);
    for (int t = 0; t < 4; ++t) {
      a.add(random_string(n, rng));
      b.add(random_string(n, rng));
    }
    const cplx c = oracle::random_complex(rng);
    EXPECT_TRUE(oracle::dense(a * b).isApprox(oracle::dense(a) * oracle::dense(b), 1e-12));
    EXPECT_TRUE(oracle::dense(a + b * c).isApprox(oracle::dense(a) + c * oracle::dense(b), 1e-12));
  }
}

TEST(PauliSum, CancellingTermsArePruned) {
  PauliSum s(3);
  s.add(PauliString::from_letters("XYZ", 0.5));
  s.add(PauliString::from_letters("XYZ", -0.5));
  EXPECT_TRUE(s.empty());
  s.add(PauliString::from_letters("IIZ", 2.0));
  EXPECT_EQ(s.coeff("IIZ"), cplx(2.0));
  EXPECT_THROW(s.add(PauliString::from_letters("XX")), DimensionError);
}
