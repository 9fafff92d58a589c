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

#include "lieprep/varopt.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace lieprep {

SparseOperator to_sparse(const PauliSum& s) {
  const int n = s.n_qubits();
  if (n > kMaxMatrixQubits) throw std::length_error("register too large");
  const std::uint64_t dim = std::uint64_t{1} << n;
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(dim * s.size());
  for (const auto& [key, c] : s.terms()) {
    for (std::uint64_t col = 0; col < dim; ++col) {
      const auto [amp, row] = apply_word(n, key.first, key.second, col);
      trips.emplace_back(static_cast<int>(row), static_cast<int>(col), c * amp);
    }
  }
  SparseOperator m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  m.prune(cplx(0.0), kPruneTolerance);
  return m;
}

CostModel::CostModel(Circuit circuit, const PauliSum& h, DeflationSet deflation)
    : circuit_(std::move(circuit)), h_(to_sparse(h)), deflation_(std::move(deflation)) {
  circuit_.validate();
  if (h.n_qubits() != circuit_.n_qubits) {
    throw std::invalid_argument("Hamiltonian and circuit registers differ");
  }
  if (!is_hermitian(h, 1e-12)) throw std::invalid_argument("Hamiltonian is not Hermitian");
  if (deflation_.betas.size() != deflation_.states.size()) {
    throw std::invalid_argument("one beta per deflated state is required");
  }
}

Eigen::VectorXcd CostModel::apply_operator(const Eigen::VectorXcd& psi) const {
  Eigen::VectorXcd out = h_ * psi;
  for (std::size_t j = 0; j < deflation_.states.size(); ++j) {
    const Eigen::VectorXcd& phi = deflation_.states[j];
    out += deflation_.betas[j] * phi.dot(psi) * phi;
  }
  return out;
}

double CostModel::energy(const Eigen::VectorXd& params) const {
  const Eigen::VectorXcd psi = apply_circuit(circuit_, params);
  return psi.dot(h_ * psi).real();
}

double CostModel::value(const Eigen::VectorXd& params) const {
  const Eigen::VectorXcd psi = apply_circuit(circuit_, params);
  const cplx v = psi.dot(apply_operator(psi));
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real()))) {
    throw std::runtime_error("cost expectation has an imaginary part");
  }
  return v.real();
}

std::pair<double, Eigen::VectorXd> CostModel::value_and_gradient(
    const Eigen::VectorXd& params) const {
  const int n = circuit_.n_qubits;
  Eigen::VectorXcd psi = apply_circuit(circuit_, params);
  Eigen::VectorXcd lambda = apply_operator(psi);
  const double value = psi.dot(lambda).real();
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(circuit_.n_params);
  for (auto g = circuit_.gates.rbegin(); g != circuit_.gates.rend(); ++g) {
    apply_gate_adjoint(*g, n, params, psi);
    if (g->theta.index >= 0) {
      Eigen::VectorXcd d = psi;
      apply_gate_derivative(*g, n, params, d);
      grad[g->theta.index] += 2.0 * lambda.dot(d).real();
    }
    if (g->phi && g->phi->index >= 0) {
      Eigen::VectorXcd d = psi;
      apply_gate_derivative(*g, n, params, d, true);
      grad[g->phi->index] += 2.0 * lambda.dot(d).real();
    }
    apply_gate_adjoint(*g, n, params, lambda);
  }
  return {value, grad};
}

double energy_cost(const Circuit& c, const Eigen::VectorXd& params, const PauliSum& h) {
  return CostModel(c, h).value(params);
}

double vqd_cost(const Circuit& c, const Eigen::VectorXd& params, const PauliSum& h,
                const DeflationSet& d) {
  return CostModel(c, h, d).value(params);
}

OptimizerConfig OptimizerConfig::vqe_defaults(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.seed = seed;
  return cfg;
}

OptimizerConfig OptimizerConfig::vqd_defaults(std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.adam = {0.1, 1000};
  cfg.gd = {0.01, 200000};
  cfg.seed = seed;
  return cfg;
}

AdamState::AdamState(Eigen::Index n, double step, double beta1, double beta2,
                     double epsilon)
    : step_(step), beta1_(beta1), beta2_(beta2), eps_(epsilon),
      m_(Eigen::VectorXd::Zero(n)), v_(Eigen::VectorXd::Zero(n)) {}

void AdamState::update(Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
  ++t_;
  m_ = beta1_ * m_ + (1.0 - beta1_) * grad;
  v_ = beta2_ * v_ + (1.0 - beta2_) * grad.cwiseProduct(grad);
  const double c1 = 1.0 - std::pow(beta1_, t_);
  const double c2 = 1.0 - std::pow(beta2_, t_);
  params.array() -= step_ * (m_.array() / c1) / ((v_.array() / c2).sqrt() + eps_);
}

RunTrace optimize_from(const CostModel& model, const OptimizerConfig& cfg,
                       Eigen::VectorXd theta) {
  if (cfg.adam.step <= 0 || cfg.gd.step <= 0 || cfg.adam.max_iters < 0 ||
      cfg.gd.max_iters < 0) {
    throw std::invalid_argument("optimizer steps must be positive");
  }
  RunTrace t;
  AdamState adam(theta.size(), cfg.adam.step, cfg.beta1, cfg.beta2, cfg.epsilon);
  int iter = 0;
  auto [cost, grad] = model.value_and_gradient(theta);
  auto check = [&] {
    if (!std::isfinite(cost) || !grad.allFinite()) {
      throw std::runtime_error("optimizer diverged at iteration " + std::to_string(iter));
    }
  };
  check();
  t.costs.emplace_back(iter, cost);
  for (int phase = 0; phase < 2 && !t.converged; ++phase) {
    const PhaseConfig& pc = phase == 0 ? cfg.adam : cfg.gd;
    if (phase == 1) t.phase2_start = iter;
    for (int k = 0; k < pc.max_iters; ++k) {
      if (grad.norm() < cfg.grad_norm_tol) {
        t.converged = true;
        break;
      }
      if (phase == 0) {
        adam.update(theta, grad);
      } else {
        theta -= pc.step * grad;
      }
      ++iter;
      std::tie(cost, grad) = model.value_and_gradient(theta);
      check();
      t.costs.emplace_back(iter, cost);
    }
  }
  if (!t.converged && grad.norm() < cfg.grad_norm_tol) t.converged = true;
  t.final_params = theta;
  t.final_cost = cost;
  t.final_energy = model.energy(theta);
  t.final_grad_norm = grad.norm();
  return t;
}

RunTrace optimize(const CostModel& model, const OptimizerConfig& cfg) {
  return optimize_from(model, cfg,
                       random_parameters(model.circuit().n_params, cfg.seed));
}

RunTrace run_vqe(const Circuit& c, const PauliSum& h, const OptimizerConfig& cfg) {
  return optimize(CostModel(c, h), cfg);
}

std::vector<RunTrace> run_vqd(const Circuit& c, const PauliSum& h, int k,
                              const OptimizerConfig& vqe_cfg,
                              const OptimizerConfig& vqd_cfg,
                              const std::vector<std::vector<double>>& betas) {
  if (k < 1) throw std::invalid_argument("VQD needs at least one excited level");
  if (static_cast<int>(betas.size()) < k) {
    throw std::invalid_argument("one beta list per excited level is required");
  }
  std::vector<RunTrace> out;
  out.push_back(run_vqe(c, h, vqe_cfg));
  DeflationSet d;
  for (int level = 1; level <= k; ++level) {
    const RunTrace& prev = out.back();
    d.params.push_back(prev.final_params);
    d.states.push_back(apply_circuit(c, prev.final_params));
    if (static_cast<int>(betas[level - 1].size()) != level) {
      throw std::invalid_argument("level " + std::to_string(level) + " needs " +
                                  std::to_string(level) + " betas");
    }
    d.betas = betas[level - 1];
    OptimizerConfig cfg = vqd_cfg;
    cfg.seed = vqd_cfg.seed + static_cast<std::uint64_t>(level);
    RunTrace t = optimize(CostModel(c, h, d), cfg);
    for (int j = 0; j < level; ++j) {
      if (t.final_energy < out[j].final_energy - 1e-6) t.level_crossing = true;
    }
    out.push_back(std::move(t));
  }
  return out;
}

Eigen::MatrixXd overlap_matrix(const std::vector<Eigen::VectorXcd>& prepared,
                               const std::vector<Eigen::VectorXcd>& exact) {
  if (prepared.size() != exact.size()) {
    throw std::invalid_argument("overlap matrix needs equal state counts");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(prepared.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = std::norm(prepared[a].dot(exact[b]));
  }
  return m;
}

std::string format_trace(const RunTrace& t) {
  std::string out;
  char buf[64];
  for (const auto& [it, cost] : t.costs) {
    if (it == t.phase2_start) {
      std::snprintf(buf, sizeof buf, "# phase2 %d\n", it);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "%d %.17g\n", it, cost);
    out += buf;
  }
  return out;
}

}  // namespace lieprep
