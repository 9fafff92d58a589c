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
#include <utility>
#include <vector>

#include "lieprep/pauli.hpp"
#include "lieprep/subspace.hpp"

namespace lieprep {

struct IdentityCheck {
  bool holds;
  /// Empty when the identity holds; otherwise one line per differing word.
  std::string diff;
};

/// Exact coefficient-level check of [a, b] == rhs.
IdentityCheck verify_identity(const PauliSum& a, const PauliSum& b,
                              const PauliSum& rhs);

struct NamedIdentity {
  std::string name;
  PauliSum a;
  PauliSum b;
  PauliSum rhs;
};

/// Commutator identities behind the completeness arguments (Z dressing for
/// G2, G4, BEMPA and complex-phase generators, plus single-plane relations).
std::vector<NamedIdentity> identity_corpus();

// Building blocks on an n-qubit register.
PauliSum hop_antisymmetric(int n, int i, int j);  // X_i Y_j - Y_i X_j
PauliSum hop_symmetric(int n, int i, int j);      // X_i X_j + Y_i Y_j
PauliSum hop4_antisymmetric(int n, int i, int j, int k, int l);
PauliSum bempa_a(int n, int i, int k);
PauliSum bempa_b(int n, int i, int j, int k);
PauliSum z_on(int n, int q);
/// |x><y| - |y><x| and the symmetric/diagonal companions over a full register.
PauliSum plane_antisymmetric(int n, std::uint64_t x, std::uint64_t y);
PauliSum plane_symmetric(int n, std::uint64_t x, std::uint64_t y);
PauliSum plane_diagonal(int n, std::uint64_t x, std::uint64_t y);

/// base * prod_k (I + (-1)^{bit_k} Z_k)/2 over the given spectators.
PauliSum dressed_generator(const PauliSum& base,
                           const std::vector<std::pair<int, int>>& spectators);

struct GeneratorSet {
  int n_qubits;
  std::vector<PauliSum> generators;
  std::string label;
};

/// Reads blocks introduced by "gen <label>" lines, each followed by Pauli-sum
/// lines "<re> <im> <word>".
GeneratorSet parse_generator_set(std::string_view text);

struct ClosureReport {
  int dimension = 0;
  int iterations = 0;
  std::optional<int> target_dim;
  std::optional<bool> matched;
  bool converged = true;
};

inline constexpr std::size_t kMaxClosureSector = 64;
inline constexpr double kNewDirectionTolerance = 1e-10;

/// Dimension of the real Lie algebra generated by {i P_k} restricted to the
/// sector. The target is dim so(w) in real mode and dim su(w) in complex mode.
ClosureReport closure_dimension(const GeneratorSet& gens,
                                const SectorBasis& sector, bool complex_mode);

/// Same, on explicit skew-Hermitian w x w matrices; optionally returns the
/// orthonormal basis found.
ClosureReport closure_of_matrices(const std::vector<Eigen::MatrixXcd>& seeds,
                                  std::vector<Eigen::MatrixXcd>* basis_out = nullptr);

}  // namespace lieprep
