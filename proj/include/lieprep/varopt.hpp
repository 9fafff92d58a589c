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

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "lieprep/circuit.hpp"
#include "lieprep/pauli.hpp"

namespace lieprep {

using SparseOperator = Eigen::SparseMatrix<cplx>;

/// Full-register sparse matrix of a Pauli sum (qubit 0 = MSB).
SparseOperator to_sparse(const PauliSum& s);

struct DeflationSet {
  std::vector<Eigen::VectorXd> params;
  /// Full-register states the overlap penalties refer to.
  std::vector<Eigen::VectorXcd> states;
  std::vector<double> betas;
};

/// <psi|H|psi> + sum_j beta_j |<psi|phi_j>|^2 on a fixed circuit.
class CostModel {
 public:
  CostModel(Circuit circuit, const PauliSum& h, DeflationSet deflation = {});

  const Circuit& circuit() const { return circuit_; }
  const DeflationSet& deflation() const { return deflation_; }

  double value(const Eigen::VectorXd& params) const;
  double energy(const Eigen::VectorXd& params) const;
  /// Cost and its exact gradient from one forward and one reverse sweep.
  std::pair<double, Eigen::VectorXd> value_and_gradient(const Eigen::VectorXd& params) const;

 private:
  Eigen::VectorXcd apply_operator(const Eigen::VectorXcd& psi) const;

  Circuit circuit_;
  SparseOperator h_;
  DeflationSet deflation_;
};

double energy_cost(const Circuit& c, const Eigen::VectorXd& params, const PauliSum& h);
double vqd_cost(const Circuit& c, const Eigen::VectorXd& params, const PauliSum& h,
                const DeflationSet& d);

struct PhaseConfig {
  double step;
  int max_iters;
};

struct OptimizerConfig {
  PhaseConfig adam{0.1, 500};
  PhaseConfig gd{0.02, 200000};
  double grad_norm_tol = 1e-9;
  std::uint64_t seed = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static OptimizerConfig vqe_defaults(std::uint64_t seed = 0);
  static OptimizerConfig vqd_defaults(std::uint64_t seed = 0);
};

/// Adam with bias correction.
class AdamState {
 public:
  AdamState(Eigen::Index n, double step, double beta1, double beta2, double epsilon);
  void update(Eigen::VectorXd& params, const Eigen::VectorXd& grad);

 private:
  double step_, beta1_, beta2_, eps_;
  Eigen::VectorXd m_, v_;
  int t_ = 0;
};

struct RunTrace {
  std::vector<std::pair<int, double>> costs;
  int phase2_start = -1;
  Eigen::VectorXd final_params;
  double final_cost = 0.0;
  double final_energy = 0.0;
  double final_grad_norm = 0.0;
  bool converged = false;
  /// Set when the energy falls below a deflated level (penalty too weak).
  bool level_crossing = false;
};

/// Two-phase Adam then gradient descent from a uniform (-pi, pi) start.
RunTrace optimize(const CostModel& model, const OptimizerConfig& cfg);
RunTrace optimize_from(const CostModel& model, const OptimizerConfig& cfg,
                       Eigen::VectorXd start);

RunTrace run_vqe(const Circuit& c, const PauliSum& h, const OptimizerConfig& cfg);

/// Levels 0..k: level 0 is plain VQE, level j deflates the j states before it
/// with betas[j-1] (one strength per deflated state).
std::vector<RunTrace> run_vqd(const Circuit& c, const PauliSum& h, int k,
                              const OptimizerConfig& vqe_cfg,
                              const OptimizerConfig& vqd_cfg,
                              const std::vector<std::vector<double>>& betas);

/// Entries |<psi_k|phi_j>|^2.
Eigen::MatrixXd overlap_matrix(const std::vector<Eigen::VectorXcd>& prepared,
                               const std::vector<Eigen::VectorXcd>& exact);

/// Two columns "iteration cost" with a "# phase2 <iter>" marker line.
std::string format_trace(const RunTrace& t);

}  // namespace lieprep
