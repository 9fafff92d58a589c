// Copyright 2026 The lieprep Authors
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

#include <bit>

#include "lieprep/pauli.hpp"
#include "lieprep/subspace.hpp"

namespace lieprep {
namespace {

// Fuzzy-register membership computed directly: qubit 2a and 2a+1 carry
// m_a = a - s, half filling and zero total m.
bool fuzzy_member(int orbitals, std::uint64_t ket) {
  const int n = 2 * orbitals;
  int count = 0, twice_m = 0;
  for (int q = 0; q < n; ++q) {
    if ((ket >> (n - 1 - q)) & 1) {
      ++count;
      twice_m += 2 * (q / 2) - (orbitals - 1);
    }
  }
  return count == orbitals && twice_m == 0;
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST(Sector, HammingWeightEnumerationIsSortedAndComplete) {
  SectorSpec spec;
  spec.n_qubits = 8;
  spec.hamming_weight = 4;
  const SectorBasis b = enumerate_sector(spec);
  EXPECT_EQ(b.size(), 70u);
  EXPECT_TRUE(std::is_sorted(b.states().begin(), b.states().end()));
  for (std::uint64_t k = 0; k < 256; ++k) {
    EXPECT_EQ(b.contains(k), std::popcount(k) == 4);
  }
  EXPECT_EQ(count_sector(spec), BigInt(70));
}

TEST(Sector, FuzzyMatchesBruteForce) {
  for (int orbitals = 1; orbitals <= 6; ++orbitals) {
    const SectorSpec spec = fuzzy_sector_spec(orbitals);
    const SectorBasis b = enumerate_sector(spec);
    std::size_t brute = 0;
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << (2 * orbitals)); ++k) {
      const bool in = fuzzy_member(orbitals, k);
      brute += in;
      EXPECT_EQ(b.contains(k), in);
      EXPECT_EQ(satisfies(spec, k), in);
    }
    EXPECT_EQ(b.size(), brute);
    EXPECT_EQ(count_sector(spec), BigInt(brute));
  }
}

TEST(Sector, FourElectronSectorHasEighteenStates) {
  EXPECT_EQ(enumerate_sector(fuzzy_sector_spec(4)).size(), 18u);
}

TEST(Sector, FortyModeCount) {
  EXPECT_EQ(count_sector(fuzzy_sector_spec(20)), BigInt(2944055592ULL));
}

TEST(Sector, LargeCountsNeedNoEnumeration) {
  SectorSpec spec;
  spec.n_qubits = 64;
  spec.hamming_weight = 32;
  EXPECT_EQ(count_sector(spec), BigInt("1832624140942590534"));
  EXPECT_THROW(enumerate_sector(spec), std::length_error);
}

TEST(Sector, BosonEncodingCountsByBruteForce) {
  const SectorSpec spec = boson_sector_spec(2, 2, 3);
  const SectorBasis b = enumerate_sector(spec);
  // Two 2-bit modes holding 0..3 particles each with total 3: (0,3),(1,2),(2,1),(3,0).
  EXPECT_EQ(b.size(), 4u);
  EXPECT_EQ(count_sector(spec), BigInt(4));
}

TEST(Sector, SpecValidation) {
  SectorSpec spec;
  spec.n_qubits = 4;
  spec.hamming_weight = 5;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.hamming_weight = 2;
  spec.twice_m = std::vector<int>{1, 1, 1};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(Sector, IndexOfAndBitstrings) {
  const SectorBasis b = enumerate_sector(fuzzy_sector_spec(4));
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(b.index_of(b.state(i)), static_cast<std::ptrdiff_t>(i));
    EXPECT_EQ(parse_bitstring(format_bitstring(8, b.state(i))), b.state(i));
  }
  EXPECT_EQ(b.index_of(0), -1);
  EXPECT_EQ(parse_bitstring("01010101"), 0b01010101u);
  EXPECT_THROW(parse_bitstring("0120"), std::invalid_argument);
}

TEST(Sector, Connectivity) {
  SectorSpec spec;
  spec.n_qubits = 4;
  spec.hamming_weight = 2;
  EXPECT_TRUE(pairwise_swap_graph_connected(enumerate_sector(spec), EdgeRule::kPairSwap));
  spec.hamming_weight = 4;
  EXPECT_TRUE(pairwise_swap_graph_connected(enumerate_sector(spec), EdgeRule::kPairSwap));
  EXPECT_TRUE(pairwise_swap_graph_connected(enumerate_sector(fuzzy_sector_spec(4)),
                                            EdgeRule::kFuzzyMoves));
}

TEST(Sector, ProjectionMatchesDenseSubmatrix) {
  SectorSpec spec;
  spec.n_qubits = 4;
  spec.hamming_weight = 2;
  const SectorBasis b = enumerate_sector(spec);
  const PauliSum op = PauliSum::from_word("XYII") - PauliSum::from_word("YXII") +
                      PauliSum::from_word("ZIZI", 0.5);
  const Eigen::MatrixXcd full = to_matrix(op);
  const Eigen::MatrixXcd p = project_operator(op, b);
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c)
      EXPECT_EQ(p(r, c), full(static_cast<int>(b.state(r)), static_cast<int>(b.state(c))));
  EXPECT_NEAR(leakage(op, b), 0.0, 1e-15);
  EXPECT_GT(leakage(PauliSum::from_word("XIII"), b), 0.5);
}

// Every weight-k sector of n qubits has C(n, k) states.
TEST(SectorProperty, BinomialCounts) {
  for (int n = 1; n <= 16; ++n) {
    for (int k = 0; k <= n; ++k) {
      SectorSpec spec;
      spec.n_qubits = n;
      spec.hamming_weight = k;
      EXPECT_EQ(count_sector(spec), BigInt(binomial(n, k)));
    }
  }
}

}  // namespace
}  // namespace lieprep
