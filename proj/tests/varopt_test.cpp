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

#include <cmath>

#include "lieprep/fuzzy.hpp"
#include "lieprep/varopt.hpp"

namespace lieprep {
namespace {

const std::string kData = LIEPREP_DATA_DIR;

struct Fixture {
  Circuit circuit = load_circuit(kData + "/fuzzy4_ansatz.txt");
  PauliSum h = build_hamiltonian(ModelParams{});
  SectorBasis sector = enumerate_sector(fuzzy_sector_spec(4));
  EigenSystem ed = exact_diagonalize(h, sector);

  Eigen::VectorXcd exact_state(int k) const {
    return embed_from_sector(ed.vectors.col(k).cast<cplx>(), sector);
  }
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

Eigen::VectorXd fd_gradient(const CostModel& m, const Eigen::VectorXd& p, double h) {
  Eigen::VectorXd g(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    Eigen::VectorXd a = p, b = p;
    a[k] += h;
    b[k] -= h;
    g[k] = (m.value(a) - m.value(b)) / (2 * h);
  }
  return g;
}

TEST(Adam, ThreeStepTraceOnQuadratic) {
  // f(x) = x^2 so grad = 2x; reference recurrence written out directly.
  Eigen::VectorXd x(1);
  x << 1.0;
  AdamState adam(1, 0.1, 0.9, 0.999, 1e-8);
  double rx = 1.0, m = 0.0, v = 0.0;
  for (int t = 1; t <= 3; ++t) {
    const double g = 2 * rx;
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    const double mh = m / (1 - std::pow(0.9, t)), vh = v / (1 - std::pow(0.999, t));
    rx -= 0.1 * mh / (std::sqrt(vh) + 1e-8);
    Eigen::VectorXd grad(1);
    grad << 2 * x[0];
    adam.update(x, grad);
    EXPECT_NEAR(x[0], rx, 1e-15) << t;
    // The first bias-corrected step has unit size: 1 - 0.1 * 2 / (2 + 1e-8).
    if (t == 1) EXPECT_NEAR(x[0], 0.9000000005, 1e-15);
  }
}

TEST(CostModel, EnergyGradientMatchesFiniteDifferences) {
  const CostModel m(fx().circuit, fx().h);
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Eigen::VectorXd p = random_parameters(19, seed);
    const auto [value, grad] = m.value_and_gradient(p);
    EXPECT_NEAR(value, m.energy(p), 1e-12);
    EXPECT_LT((grad - fd_gradient(m, p, 1e-5)).cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(CostModel, DeflatedGradientMatchesFiniteDifferences) {
  DeflationSet d;
  for (int k = 0; k < 2; ++k) {
    d.params.push_back(random_parameters(19, 40 + k));
    d.states.push_back(apply_circuit(fx().circuit, d.params.back()));
  }
  d.betas = {30, 20};
  const CostModel m(fx().circuit, fx().h, d);
  const Eigen::VectorXd p = random_parameters(19, 5);
  const auto [value, grad] = m.value_and_gradient(p);
  const Eigen::VectorXcd psi = apply_circuit(fx().circuit, p);
  const double penalty = 30 * std::norm(d.states[0].dot(psi)) + 20 * std::norm(d.states[1].dot(psi));
  EXPECT_NEAR(value, m.energy(p) + penalty, 1e-10);
  EXPECT_LT((grad - fd_gradient(m, p, 1e-5)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(CostModel, Rejections) {
  EXPECT_THROW(CostModel(fx().circuit, PauliSum::from_word("XY")), std::invalid_argument);
  EXPECT_THROW(CostModel(fx().circuit, PauliSum::from_word("XYZZXYZZ", cplx(0, 1))),
               std::invalid_argument);
  DeflationSet d;
  d.states.push_back(fx().exact_state(0));
  EXPECT_THROW(CostModel(fx().circuit, fx().h, d), std::invalid_argument);
}

TEST(Optimizer, ZeroHamiltonianStopsImmediately) {
  const PauliSum zero(8);
  const RunTrace t = run_vqe(fx().circuit, zero, OptimizerConfig::vqe_defaults(2));
  EXPECT_EQ(t.final_cost, 0.0);
  EXPECT_TRUE(t.converged);
  EXPECT_EQ(t.costs.size(), 1u);
}

TEST(Optimizer, OneParameterToyMatchesScan) {
  const Circuit c = parse_circuit("qubits 2\ninput 01\nG2 0 1 p0\n");
  const PauliSum h = PauliSum::from_word("ZI");
  const CostModel m(c, h);
  double scan_min = 1e9;
  for (int k = 0; k <= 20000; ++k) {
    Eigen::VectorXd p(1);
    p << -M_PI + 2 * M_PI * k / 20000.0;
    scan_min = std::min(scan_min, m.energy(p));
  }
  const RunTrace t = run_vqe(c, h, OptimizerConfig::vqe_defaults(1));
  EXPECT_TRUE(t.converged);
  EXPECT_NEAR(t.final_energy, scan_min, 1e-8);
  EXPECT_NEAR(t.final_energy, -1.0, 1e-12);
}

TEST(Optimizer, BitReproducible) {
  OptimizerConfig cfg = OptimizerConfig::vqe_defaults(4);
  cfg.adam.max_iters = 60;
  cfg.gd.max_iters = 40;
  const RunTrace a = run_vqe(fx().circuit, fx().h, cfg);
  const RunTrace b = run_vqe(fx().circuit, fx().h, cfg);
  EXPECT_EQ(a.costs, b.costs);
  EXPECT_EQ(a.final_params, b.final_params);
  EXPECT_EQ(a.phase2_start, 60);
}

TEST(Optimizer, RejectsBadSteps) {
  OptimizerConfig cfg;
  cfg.gd.step = 0;
  EXPECT_THROW(run_vqe(fx().circuit, fx().h, cfg), std::invalid_argument);
}

// Every VQE iterate is a normalized state, so its energy respects the
// variational bound.
TEST(OptimizerProperty, VariationalBound) {
  OptimizerConfig cfg = OptimizerConfig::vqe_defaults(0);
  cfg.gd.max_iters = 200;
  const RunTrace t = run_vqe(fx().circuit, fx().h, cfg);
  for (const auto& [it, cost] : t.costs) EXPECT_GE(cost, fx().ed.energies[0] - 1e-9) << it;
}

// With a step below 2 / (largest Hessian eigenvalue) the descent phase
// converges and its tail never increases the cost.
TEST(OptimizerProperty, StableDescentConvergesMonotonically) {
  OptimizerConfig cfg = OptimizerConfig::vqe_defaults(0);
  cfg.gd.step = 0.005;
  const RunTrace t = run_vqe(fx().circuit, fx().h, cfg);
  ASSERT_TRUE(t.converged);
  EXPECT_NEAR(t.final_energy, fx().ed.energies[0], 1e-7);
  const auto& c = t.costs;
  ASSERT_GT(c.size(), 51u);
  for (std::size_t k = c.size() - 50; k < c.size(); ++k) {
    EXPECT_LE(c[k].second, c[k - 1].second + 1e-12);
  }
}

// Excited level from deflation against the exact ground state.
RunTrace first_excited(double beta, const Eigen::VectorXd* warm) {
  DeflationSet d;
  d.params.emplace_back();
  d.states.push_back(fx().exact_state(0));
  d.betas = {beta};
  const CostModel m(fx().circuit, fx().h, d);
  OptimizerConfig coarse;
  coarse.adam = {0.1, 1000};
  coarse.gd = {1e-3, 0};
  coarse.seed = 1;
  OptimizerConfig fine = coarse;
  fine.adam = {warm ? 1e-4 : 1e-3, warm ? 3000 : 5000};
  const RunTrace t = warm ? optimize_from(m, coarse, *warm) : optimize(m, coarse);
  return optimize_from(m, fine, warm ? *warm : t.final_params);
}

TEST(Deflation, ExactGroundStateGivesFirstExcitedLevel) {
  const RunTrace t = first_excited(10, nullptr);
  EXPECT_NEAR(t.final_energy, fx().ed.energies[1], 1e-7);
  EXPECT_LT(std::norm(fx().exact_state(0).dot(apply_circuit(fx().circuit, t.final_params))),
            1e-8);
}

TEST(Deflation, LargePenaltyDoesNotMoveTheMinimizer) {
  const RunTrace base = first_excited(10, nullptr);
  for (double beta : {1e3, 1e6}) {
    const RunTrace t = first_excited(beta, &base.final_params);
    EXPECT_NEAR(t.final_energy, base.final_energy, 1e-7) << beta;
  }
}

TEST(Deflation, LevelCountChecks) {
  EXPECT_THROW(run_vqd(fx().circuit, fx().h, 0, {}, {}, {}), std::invalid_argument);
  EXPECT_THROW(run_vqd(fx().circuit, fx().h, 2, {}, {}, {{10}}), std::invalid_argument);
}

TEST(Overlap, IdentityAndWrongRow) {
  std::vector<Eigen::VectorXcd> exact{fx().exact_state(0), fx().exact_state(1)};
  EXPECT_TRUE(overlap_matrix(exact, exact).isIdentity(1e-12));
  std::vector<Eigen::VectorXcd> wrong{fx().exact_state(2), fx().exact_state(1)};
  const Eigen::MatrixXd m = overlap_matrix(wrong, exact);
  EXPECT_NEAR(m(0, 0), 0.0, 1e-12);
  for (Eigen::Index r = 0; r < m.rows(); ++r) EXPECT_LE(m.row(r).sum(), 1 + 1e-10);
  EXPECT_THROW(overlap_matrix(wrong, {exact[0]}), std::invalid_argument);
}

TEST(Trace, FormatMarksPhaseBoundary) {
  RunTrace t;
  t.costs = {{0, 1.5}, {1, 1.25}, {2, 1.0}};
  t.phase2_start = 2;
  EXPECT_EQ(format_trace(t), "0 1.5\n1 1.25\n# phase2 2\n2 1\n");
}

}  // namespace
}  // namespace lieprep
