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
#include <set>

#include "oracle.hpp"
#include "spt/errors.hpp"
#include "spt/fermion.hpp"
#include "spt/reduce.hpp"

using namespace spt;

TEST(Fermion, EnumerationCountsUnorderedPairsOfTuples) {
  EXPECT_EQ(enumerate_rdm(1, 1).size(), 3u);
  EXPECT_EQ(enumerate_rdm(1, 2).size(), 10u);
  EXPECT_EQ(enumerate_rdm(2, 2).size(), 21u);
  EXPECT_EQ(enumerate_rdm(3, 3).size(), 20u * 21u / 2u);
  EXPECT_THROW(enumerate_rdm(4, 4), RangeError);
  EXPECT_THROW(enumerate_rdm(2, 1), RangeError);
}

TEST(Fermion, ClassLabels) {
  EXPECT_EQ(classify(class_representative(1, 0, 0, 0)).label, "αα");
  EXPECT_EQ(classify(class_representative(1, 0, 1, 0)).label, "ᾱᾱ");
  EXPECT_EQ(classify(class_representative(1, 0, 1, 0)).q_sites, 2u);
  EXPECT_EQ(classify(class_representative(1, 1, 0, 1)).label, "ααβ̄β̄");
  EXPECT_EQ(classify(class_representative(1, 1, 0, 1)).q_sites, 3u);
  EXPECT_EQ(classify(class_representative(1, 1, 1, 1)).label, "ᾱᾱβ̄β̄");
  EXPECT_EQ(classify(class_representative(1, 1, 1, 1)).q_sites, 4u);

  RdmElementSpec mixed{{{0, Spin::Alpha}}, {{0, Spin::Beta}}};
  const auto c = classify(mixed);
  EXPECT_TRUE(c.zero_class);
  EXPECT_EQ(c.label, "αβ");
  EXPECT_FALSE(c.q_sites.has_value());
}

TEST(Fermion, AdjointAndHermitianParts) {
  std::mt19937_64 rng(7);
  for (auto& spec : enumerate_rdm(2, 2)) {
    auto op = rdm_element_operator(spec, 2) * oracle::random_complex(rng);
    const auto m = oracle::dense(op, Mapping::JordanWigner);
    EXPECT_TRUE(oracle::dense(op.adjoint(), Mapping::JordanWigner).isApprox(m.adjoint(), 1e-12));
    const auto parts = hermitian_components(op);
    const auto re = oracle::dense(parts.real_part, Mapping::JordanWigner);
    const auto im = parts.imag_part.empty() ? oracle::Mat::Zero(m.rows(), m.cols()).eval()
                                            : oracle::dense(parts.imag_part, Mapping::JordanWigner);
    EXPECT_TRUE(re.isApprox(re.adjoint(), 1e-12));
    EXPECT_TRUE(im.isApprox(im.adjoint(), 1e-12));
    const auto rebuilt = parts.imag_part.empty() ? re : ((re - cplx(0, 1) * im) / 2.0).eval();
    EXPECT_LT((rebuilt - m).norm(), 1e-12);
  }
}

TEST(Fermion, PauliExcludedElementsVanish) {
  RdmElementSpec repeated{{{0, Spin::Alpha}, {0, Spin::Alpha}}, {{0, Spin::Alpha}, {1, Spin::Alpha}}};
  EXPECT_TRUE(repeated.pauli_excluded());
  EXPECT_LT(oracle::dense(rdm_element_operator(repeated, 2), Mapping::JordanWigner).norm(), 1e-12);
}
