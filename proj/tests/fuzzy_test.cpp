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
#include <cmath>

#include "lieprep/fuzzy.hpp"

namespace lieprep {
namespace {

Eigen::MatrixXcd dense(const PauliSum& s) { return to_matrix(s); }

double commutator_norm(const PauliSum& a, const PauliSum& b) {
  const Eigen::MatrixXcd x = dense(a), y = dense(b);
  return (x * y - y * x).norm();
}

TEST(Wigner3j, ClosedFormsAndSelectionRules) {
  // (j j 0; m -m 0) = (-1)^(j-m) / sqrt(2j+1), arguments doubled.
  for (int tj = 0; tj <= 7; ++tj) {
    for (int tm = -tj; tm <= tj; tm += 2) {
      const double sign = ((tj - tm) / 2) % 2 == 0 ? 1.0 : -1.0;
      EXPECT_NEAR(wigner_3j(tj, tj, 0, tm, -tm, 0), sign / std::sqrt(tj + 1.0), 1e-14);
    }
  }
  EXPECT_NEAR(wigner_3j(1, 1, 2, 1, -1, 0), 1.0 / std::sqrt(6.0), 1e-14);
  EXPECT_EQ(wigner_3j(2, 2, 2, 0, 0, 0), 0.0);  // odd j1 + j2 + j3 with zero m
  EXPECT_EQ(wigner_3j(2, 2, 6, 0, 0, 0), 0.0);  // triangle violated
  EXPECT_EQ(wigner_3j(2, 2, 2, 2, 2, 0), 0.0);  // m sum nonzero
}

// Orthogonality: sum over m1, m2 of (2j3+1) (j1 j2 j3; m1 m2 m3)^2 = 1.
TEST(Wigner3jProperty, Orthogonality) {
  for (int tj1 = 1; tj1 <= 5; ++tj1)
    for (int tj2 = 1; tj2 <= 5; ++tj2)
      for (int tj3 = std::abs(tj1 - tj2); tj3 <= tj1 + tj2; tj3 += 2)
        for (int tm3 = -tj3; tm3 <= tj3; tm3 += 2) {
          double sum = 0;
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
            const int tm2 = -tm3 - tm1;
            if (std::abs(tm2) > tj2) continue;
            const double w = wigner_3j(tj1, tj2, tj3, tm1, tm2, tm3);
            sum += (tj3 + 1) * w * w;
          }
          EXPECT_NEAR(sum, 1.0, 1e-12);
        }
}

// Swapping two columns multiplies by (-1)^(j1+j2+j3).
TEST(Wigner3jProperty, ColumnSwapSymmetry) {
  for (int tj3 : {0, 2, 4, 6}) {
    const double sign = ((3 + 3 + tj3) / 2) % 2 == 0 ? 1.0 : -1.0;
    for (int tm1 = -3; tm1 <= 3; tm1 += 2)
      for (int tm2 = -3; tm2 <= 3; tm2 += 2) {
        const int tm3 = -tm1 - tm2;
        if (std::abs(tm3) > tj3) continue;
        EXPECT_NEAR(wigner_3j(3, 3, tj3, tm2, tm1, tm3),
                    sign * wigner_3j(3, 3, tj3, tm1, tm2, tm3), 1e-14);
      }
  }
}

TEST(JordanWigner, CanonicalAnticommutation) {
  const int n = 4;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Eigen::MatrixXcd ca = dense(jordan_wigner({{{a, false}}, 1.0}, n));
      const Eigen::MatrixXcd cb = dense(jordan_wigner({{{b, true}}, 1.0}, n));
      const Eigen::MatrixXcd anti = ca * cb + cb * ca;
      Eigen::MatrixXcd want = Eigen::MatrixXcd::Zero(16, 16);
      if (a == b) want.setIdentity();
      EXPECT_LT((anti - want).norm(), 1e-14) << a << " " << b;
      const Eigen::MatrixXcd cc = dense(jordan_wigner({{{b, false}}, 1.0}, n));
      EXPECT_LT((ca * cc + cc * ca).norm(), 1e-14);
    }
}

TEST(JordanWigner, NumberOperatorCountsOnes) {
  const Eigen::MatrixXcd n = dense(number_operator(4));
  for (int k = 0; k < 16; ++k) EXPECT_NEAR(n(k, k).real(), std::popcount(unsigned(k)), 1e-14);
}

TEST(Hamiltonian, HermitianAndSymmetric) {
  const ModelParams p;
  const PauliSum h = build_hamiltonian(p);
  EXPECT_EQ(h.n_qubits(), 8);
  EXPECT_TRUE(is_hermitian(h, 1e-12));
  EXPECT_LT(commutator_norm(h, number_operator(8)), 1e-10);
  EXPECT_LT(commutator_norm(h, sz_operator(p.twice_s)), 1e-10);
  EXPECT_LT(commutator_norm(h, l_squared_operator(p.twice_s)), 1e-9);
  EXPECT_LT(commutator_norm(h, z2_parity_operator(p.twice_s)), 1e-10);
}

TEST(Hamiltonian, PotentialIsReal) {
  for (const auto& [idx, v] : potential_tensor(ModelParams{})) {
    EXPECT_TRUE(std::isfinite(v));
    for (int a : idx) {
      EXPECT_GE(a, 0);
      EXPECT_LT(a, 4);
    }
  }
}

TEST(ExactDiagonalization, MatchesFullRegisterSpectrum) {
  const ModelParams p;
  const PauliSum h = build_hamiltonian(p);
  const SectorBasis s = enumerate_sector(fuzzy_sector_spec(4));
  const EigenSystem es = exact_diagonalize(h, s);
  // Push every state outside the sector up by a large penalty.
  const double mu = 500.0;
  PauliSum n4 = number_operator(8) - PauliSum::identity(8, 4.0);
  const PauliSum sz = sz_operator(p.twice_s);
  const Eigen::MatrixXcd full = dense(h + mu * (n4 * n4) + mu * (sz * sz));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(full);
  for (int k = 0; k < 18; ++k) EXPECT_NEAR(es.energies[k], solver.eigenvalues()[k], 1e-9);
}

TEST(ExactDiagonalization, LowestLevelsAtCriticalCouplings) {
  const SectorBasis s = enumerate_sector(fuzzy_sector_spec(4));
  const EigenSystem es = exact_diagonalize(build_hamiltonian(ModelParams{}), s);
  EXPECT_NEAR(es.energies[0], -16.18995794, 1e-6);
  EXPECT_NEAR(es.energies[1], -8.59299820, 1e-6);
  EXPECT_NEAR(es.energies[2], 3.61550790, 1e-6);
}

TEST(Spectrum, RescaledTableAtFittedField) {
  const double dims[] = {0,       0.51463, 1.35866, 1.52337, 2.32689, 2.39615,
                         2.44305, 2.86959, 3,       3.12754, 3.27212, 3.54366,
                         3.67311, 4.02972, 4.06989, 4.23715, 4.61834, 4.88471};
  const int ell[] = {0, 0, 0, 1, 1, 0, 2, 3, 2, 2, 1, 0, 3, 0, 2, 2, 3, 4};
  const int z2[] = {1, -1, 1, -1, 1, -1, -1, -1, 1, 1, -1, 1, 1, 1, 1, -1, -1, 1};
  ModelParams p;
  p.h = 6.15;
  const SectorBasis s = enumerate_sector(fuzzy_sector_spec(4));
  EigenSystem es = exact_diagonalize(build_hamiltonian(p), s);
  const auto q = resolve_symmetries(es, s, p.twice_s);
  const auto spec = rescale_spectrum(es.energies, q);
  ASSERT_EQ(spec.size(), 18u);
  for (int k = 0; k < 18; ++k) {
    EXPECT_NEAR(spec[k].dimension, dims[k], 1e-4) << k;
    EXPECT_EQ(spec[k].ell, ell[k]) << k;
    EXPECT_EQ(spec[k].z2, z2[k]) << k;
  }
}

TEST(Spectrum, QuantumNumbersAreSharp) {
  const SectorBasis s = enumerate_sector(fuzzy_sector_spec(4));
  EigenSystem es = exact_diagonalize(build_hamiltonian(ModelParams{}), s);
  const auto q = resolve_symmetries(es, s, 3);
  for (const auto& n : q) {
    EXPECT_NEAR(n.casimir, n.ell * (n.ell + 1.0), 1e-8);
    EXPECT_NEAR(std::abs(n.parity), 1.0, 1e-8);
    EXPECT_EQ(n.z2, n.parity > 0 ? 1 : -1);
  }
}

TEST(Spectrum, RescaleNeedsStressTensor) {
  Eigen::VectorXd e(2);
  e << 0.0, 1.0;
  std::vector<QuantumNumbers> q{{0, 1, 0.0, 1.0}, {0, -1, 0.0, -1.0}};
  EXPECT_THROW(rescale_spectrum(e, q), std::runtime_error);
}

TEST(ModelParamsTest, Validation) {
  ModelParams p;
  p.twice_s = 0;
  EXPECT_THROW(build_hamiltonian(p), std::invalid_argument);
}

}  // namespace
}  // namespace lieprep
