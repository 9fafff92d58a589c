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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lieprep/gates.hpp"
#include "lieprep/subspace.hpp"

namespace lieprep {

/// Angle source: a parameter slot, or a fixed value when index is negative.
struct AngleRef {
  int index = -1;
  double value = 0.0;

  double resolve(const Eigen::VectorXd& params) const {
    return index >= 0 ? params[index] : value;
  }
};

struct GateInstance {
  GateKind kind;
  std::vector<int> qubits;
  AngleRef theta;
  std::optional<AngleRef> phi;
};

struct Circuit {
  int n_qubits = 0;
  std::uint64_t input_state = 0;
  std::vector<GateInstance> gates;
  int n_params = 0;

  /// Throws on out-of-range qubits or parameters, repeated qubits, missing
  /// phases, or parameters that no gate uses.
  void validate() const;
  /// True if every gate is a real kind with theta as its only parameter.
  bool is_real() const;
};

/// Line-based text form: "qubits N", "input <bits>", "params P", then one gate
/// per line "<KIND> q0 q1 ... <theta> [<phi>]" with angles written "pK" or as
/// numbers. '#' starts a comment.
Circuit parse_circuit(std::string_view text);
Circuit load_circuit(const std::string& path);
std::string format_circuit(const Circuit& c);

/// Applies a gate instance in place on a full register (qubit 0 = MSB).
void apply_gate(const GateInstance& g, int n_qubits, const Eigen::VectorXd& params,
                Eigen::Ref<Eigen::VectorXcd> state);
/// Replaces the state by (dU/dtheta) state, or (dU/dphi) state when
/// `wrt_phase`; amplitudes outside the active plane are zeroed.
void apply_gate_derivative(const GateInstance& g, int n_qubits,
                           const Eigen::VectorXd& params,
                           Eigen::Ref<Eigen::VectorXcd> state,
                           bool wrt_phase = false);
void apply_gate_adjoint(const GateInstance& g, int n_qubits,
                        const Eigen::VectorXd& params,
                        Eigen::Ref<Eigen::VectorXcd> state);

Eigen::VectorXcd basis_state(int n_qubits, std::uint64_t ket);
Eigen::VectorXcd apply_circuit(const Circuit& c, const Eigen::VectorXd& params);

/// Sector amplitudes <x|psi> for every x in the sector.
Eigen::VectorXcd restrict_to_sector(const Eigen::VectorXcd& full,
                                    const SectorBasis& sector);
Eigen::VectorXcd embed_from_sector(const Eigen::VectorXcd& amplitudes,
                                   const SectorBasis& sector);

inline constexpr double kRankTolerance = 1e-10;

struct JacobianReport {
  Eigen::MatrixXcd matrix;
  int rank = 0;
  Eigen::VectorXd singular_values;
  Eigen::VectorXd reference_point;
};

Eigen::MatrixXcd jacobian_matrix(const Circuit& c, const Eigen::VectorXd& params,
                                 const SectorBasis& sector);

/// Columns d<x|psi>/d theta_k by generator insertion. In real mode the rank
/// is taken on the real part.
JacobianReport jacobian(const Circuit& c, const Eigen::VectorXd& params,
                        const SectorBasis& sector);
int numerical_rank(const Eigen::VectorXd& singular_values,
                   double tolerance = kRankTolerance);

/// Parameter vector uniform in (-pi, pi) from a seeded stream.
Eigen::VectorXd random_parameters(int n, std::uint64_t seed);

struct ReachOptions {
  int restarts = 5;
  int max_iterations = 2000;
  double reached_tolerance = 1e-10;
};

struct ReachReport {
  int n_targets = 0;
  int reached = 0;
  /// Best squared distance per target.
  std::vector<double> residuals;
  double max_reached_residual = 0.0;
};

/// Best squared distance ||f(theta) - y||^2 found from `restarts` seeded
/// Levenberg-Marquardt runs (stops early once below tolerance).
double fit_target(const Circuit& c, const SectorBasis& sector,
                  const Eigen::VectorXd& target, std::uint64_t seed,
                  const ReachOptions& opt, Eigen::VectorXd* best_params = nullptr);

/// Random unit targets on S^{w-1}; target t uses stream seed ^ t.
ReachReport reachability_test(const Circuit& c, const SectorBasis& sector,
                              int n_targets, std::uint64_t seed,
                              const ReachOptions& opt = {});

struct SpanningOptions {
  int probe_targets = 50;
  int max_extras = 4;
  ReachOptions probe{2, 500, 1e-10};
};

/// Greedy rank-building circuit over a template pool (angles in the pool are
/// ignored; each appended gate gets a fresh parameter).
Circuit build_spanning_circuit(const SectorBasis& sector, std::uint64_t input_state,
                               const std::vector<GateInstance>& pool,
                               std::uint64_t seed,
                               const SpanningOptions& opt = {});

/// All-pair G2 templates on n qubits.
std::vector<GateInstance> all_pair_g2_pool(int n_qubits);
/// Same-orbital G2 and m-conserving G4 templates for the fuzzy register.
std::vector<GateInstance> fuzzy_gate_pool(int n_orbitals);

}  // namespace lieprep
