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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lieprep/pauli.hpp"

namespace lieprep {

enum class GateKind { G2, A2, G4, A4, BEMPA_A, BEMPA_B, G2_COMPLEX, G4_COMPLEX };

inline constexpr GateKind kAllGateKinds[] = {
    GateKind::G2,      GateKind::A2,      GateKind::G4,
    GateKind::A4,      GateKind::BEMPA_A, GateKind::BEMPA_B,
    GateKind::G2_COMPLEX, GateKind::G4_COMPLEX};

int arity(GateKind kind);
bool is_complex(GateKind kind);
/// Reflection (determinant -1) kinds.
bool is_reflection(GateKind kind);
std::string_view gate_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

/// Local kets (qubit 0 = MSB over the gate's own qubits) spanning the single
/// plane a gate rotates in. Every other local basis state is left fixed.
struct ActivePair {
  std::uint64_t u;
  std::uint64_t v;
};
ActivePair active_pair(GateKind kind);

/// The 2x2 block acting on (u, v) and its derivative in theta.
Eigen::Matrix2cd gate_block(GateKind kind, double theta,
                            std::optional<double> phi = std::nullopt);
Eigen::Matrix2cd gate_block_derivative(GateKind kind, double theta,
                                       std::optional<double> phi = std::nullopt);

Eigen::MatrixXcd gate_matrix(GateKind kind, double theta,
                             std::optional<double> phi = std::nullopt);

/// Generator P and prefactor c with gate_matrix(theta) = A0 * exp(i c theta P),
/// where A0 is the identity for G kinds and the theta = 0 reflection for
/// A kinds (c is negative there).
struct GeneratorForm {
  PauliSum generator;
  double prefactor;
};
GeneratorForm generator(GateKind kind, std::optional<double> phi = std::nullopt);

/// |u><v| on the listed qubits of an n-qubit register; bit strings are read
/// with their first character on qubits[0].
PauliSum transition(int n_qubits, const std::vector<int>& qubits,
                    std::string_view u_bits, std::string_view v_bits);

enum class ElementaryKind { CNOT, RY, RZ, H, X, PHASE };

struct ElementaryGate {
  ElementaryKind kind;
  std::vector<int> qubits;
  double angle = 0.0;
};

struct Decomposition {
  std::vector<ElementaryGate> gates;
  int declared_cnots = 0;
  int declared_depth = 0;
};

struct ResourceCount {
  int cnots;
  int depth;
  friend bool operator==(const ResourceCount&, const ResourceCount&) = default;
};

ResourceCount resource_count(const Decomposition& d);

/// Gray-code uniformly controlled R_y(alpha) on qubit m, controls 0..m-1.
Decomposition multi_controlled_ry(int m, double alpha);
/// Same, placed on arbitrary register qubits.
void append_multi_controlled_ry(std::vector<ElementaryGate>& out,
                                const std::vector<int>& controls, int target,
                                double alpha);
/// diag phase e^{i gamma} on the all-ones state of `qubits`, as a parity
/// phase polynomial with 2^n - 2 CNOTs.
void append_multi_controlled_phase(std::vector<ElementaryGate>& out,
                                   const std::vector<int>& qubits, double gamma);

/// Elementary realization of a real gate on local qubits 0..arity-1.
Decomposition decompose(GateKind kind, double theta);

Eigen::Matrix2cd elementary_single_matrix(const ElementaryGate& g);
/// Applies an elementary gate to a full-register state (qubit 0 = MSB).
void apply_elementary(const ElementaryGate& g, int n_qubits,
                      Eigen::Ref<Eigen::VectorXcd> state);
Eigen::MatrixXcd decomposition_matrix(const Decomposition& d, int n_qubits);

std::string emit_decomposition(const Decomposition& d);

}  // namespace lieprep
