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

#include <chrono>

#include "dense_closure.hpp"
#include "lieprep/lie.hpp"

namespace lieprep {
namespace {

const cplx kI(0.0, 1.0);

std::vector<Eigen::MatrixXcd> projected(const GeneratorSet& g, const SectorBasis& s) {
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& p : g.generators) out.push_back(kI * project_operator(p, s));
  return out;
}

SectorBasis weight_sector(int n, int k) {
  SectorSpec spec;
  spec.n_qubits = n;
  spec.hamming_weight = k;
  return enumerate_sector(spec);
}

GeneratorSet hopping_set(int n, bool adjacent_only, bool with_symmetric) {
  GeneratorSet g{n, {}, "hop"};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (adjacent_only && j != i + 1) continue;
      g.generators.push_back(hop_antisymmetric(n, i, j));
      if (with_symmetric) g.generators.push_back(hop_symmetric(n, i, j));
    }
  return g;
}

TEST(Identities, CorpusHoldsExactly) {
  const auto start = std::chrono::steady_clock::now();
  const auto corpus = identity_corpus();
  EXPECT_GT(corpus.size(), 100u);
  for (const auto& id : corpus) {
    const IdentityCheck r = verify_identity(id.a, id.b, id.rhs);
    EXPECT_TRUE(r.holds) << id.name << "\n" << r.diff;
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(),
            5.0);
}

TEST(Identities, CorpusAgreesWithDenseMatrices) {
  for (const auto& id : identity_corpus()) {
    if (id.a.n_qubits() > 6) continue;
    const Eigen::MatrixXcd a = to_matrix(id.a), b = to_matrix(id.b);
    EXPECT_LT((a * b - b * a - to_matrix(id.rhs)).norm(), 1e-10) << id.name;
  }
}

TEST(Identities, WrongRightHandSideIsReported) {
  const PauliSum a = hop_antisymmetric(3, 0, 1), b = hop_antisymmetric(3, 1, 2);
  const IdentityCheck r = verify_identity(a, b, 2.0 * kI * hop_antisymmetric(3, 0, 2) * z_on(3, 1));
  EXPECT_FALSE(r.holds);
  EXPECT_FALSE(r.diff.empty());
}

TEST(Identities, OverlappingHopsEmitZ) {
  const PauliSum c = commutator(hop_antisymmetric(3, 0, 1), hop_antisymmetric(3, 1, 2));
  EXPECT_EQ(c, -2.0 * kI * hop_antisymmetric(3, 0, 2) * z_on(3, 1));
}

TEST(Dressing, SingleSpectatorIsolatesOnePlane) {
  const PauliSum d = dressed_generator(hop_antisymmetric(3, 0, 1), {{2, 0}});
  const Eigen::MatrixXcd m = to_matrix(d);
  // Nonzero only between |010> and |100>.
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) {
      const bool plane = (r == 0b010 && c == 0b100) || (r == 0b100 && c == 0b010);
      EXPECT_EQ(std::abs(m(r, c)) > 1e-14, plane) << r << " " << c;
    }
}

TEST(Dressing, FullPinningGivesSinglePlaneGenerator) {
  const int n = 4;
  const PauliSum d = dressed_generator(hop_antisymmetric(n, 0, 1), {{2, 1}, {3, 0}});
  const std::uint64_t x = 0b0110, y = 0b1010;
  const Eigen::MatrixXcd got = to_matrix(0.5 * kI * d);
  Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(16, 16);
  want(x, y) = 1.0;
  want(y, x) = -1.0;
  EXPECT_TRUE(got.isApprox(want, 1e-14) || got.isApprox(-want, 1e-14));
  EXPECT_TRUE(to_matrix(plane_antisymmetric(n, x, y)).isApprox(want, 1e-14));
  EXPECT_THROW(dressed_generator(hop_antisymmetric(n, 0, 1), {{1, 0}}),
               std::invalid_argument);
}

TEST(Closure, AllPairHoppingGivesSo4) {
  const auto s = weight_sector(4, 2);
  const GeneratorSet g = hopping_set(4, false, false);
  const ClosureReport r = closure_dimension(g, s, false);
  EXPECT_EQ(r.dimension, 15);
  EXPECT_EQ(r.dimension, testing_oracles::dense_closure_dimension(projected(g, s)));
  EXPECT_EQ(r.target_dim, 15);
  EXPECT_EQ(r.matched, true);
}

TEST(Closure, AdjacentHoppingStaysSmall) {
  const auto s = weight_sector(4, 2);
  const GeneratorSet g = hopping_set(4, true, false);
  const ClosureReport r = closure_dimension(g, s, false);
  EXPECT_EQ(r.dimension, 6);
  EXPECT_EQ(r.dimension, testing_oracles::dense_closure_dimension(projected(g, s)));
}

TEST(Closure, ComplexHoppingGivesSu) {
  const auto s = weight_sector(4, 2);
  const GeneratorSet g = hopping_set(4, false, true);
  const ClosureReport r = closure_dimension(g, s, true);
  EXPECT_EQ(r.dimension, 35);
  EXPECT_EQ(r.dimension, testing_oracles::dense_closure_dimension(projected(g, s)));
}

TEST(Closure, ThreeModeBosonSetReachesFullAlgebra) {
  const int modes = 3, bits = 2, n = modes * bits;
  const auto s = enumerate_sector(boson_sector_spec(modes, bits, 2));
  GeneratorSet g{n, {}, "boson"};
  for (int a = 0; a < modes; ++a)
    for (int b = a + 1; b < modes; ++b) {
      g.generators.push_back(bempa_a(n, a * bits, b * bits));
      g.generators.push_back(bempa_a(n, a * bits + 1, b * bits + 1));
      g.generators.push_back(bempa_b(n, a * bits, b * bits, a * bits + 1));
      g.generators.push_back(bempa_b(n, a * bits, b * bits, b * bits + 1));
    }
  const ClosureReport r = closure_dimension(g, s, false);
  const int w = static_cast<int>(s.size());
  EXPECT_EQ(r.dimension, w * (w - 1) / 2);
  EXPECT_EQ(r.dimension, testing_oracles::dense_closure_dimension(projected(g, s)));
}

TEST(Closure, FromMatrices) {
  std::vector<Eigen::MatrixXcd> seeds(2, Eigen::MatrixXcd::Zero(3, 3));
  seeds[0](0, 1) = 1;
  seeds[0](1, 0) = -1;
  seeds[1](1, 2) = 1;
  seeds[1](2, 1) = -1;
  std::vector<Eigen::MatrixXcd> basis;
  EXPECT_EQ(closure_of_matrices(seeds, &basis).dimension, 3);
  EXPECT_EQ(basis.size(), 3u);
}

TEST(Closure, GeneratorFileParsing) {
  const GeneratorSet g = parse_generator_set(
      "# two hops\ngen L01\n1 0 XYI\n-1 0 YXI\ngen L12\n1 0 IXY\n-1 0 IYX\n");
  EXPECT_EQ(g.n_qubits, 3);
  ASSERT_EQ(g.generators.size(), 2u);
  EXPECT_EQ(g.generators[1], hop_antisymmetric(3, 1, 2));
  EXPECT_THROW(parse_generator_set("1 0 XY\n"), std::invalid_argument);
  EXPECT_THROW(parse_generator_set("gen a\n1 0 XY\ngen b\n1 0 XYZ\n"), std::invalid_argument);
}

// Closure dimension never exceeds the ceiling and matches the dense oracle on
// random subsets of hopping generators.
TEST(ClosureProperty, RandomSubsetsMatchOracle) {
  const auto s = weight_sector(5, 2);
  const GeneratorSet all = hopping_set(5, false, false);
  std::uint64_t state = 12345;
  for (int trial = 0; trial < 8; ++trial) {
    GeneratorSet g{5, {}, "subset"};
    for (const auto& p : all.generators) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      if ((state >> 33) & 1) g.generators.push_back(p);
    }
    if (g.generators.empty()) continue;
    const ClosureReport r = closure_dimension(g, s, false);
    EXPECT_LE(r.dimension, 45);
    EXPECT_EQ(r.dimension, testing_oracles::dense_closure_dimension(projected(g, s)));
  }
}

}  // namespace
}  // namespace lieprep
