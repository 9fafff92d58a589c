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
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "lieprep/pauli.hpp"

namespace lieprep {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr std::uint64_t kMaxEnumeratedStates = std::uint64_t{1} << 24;

/// Constant-Hamming-weight sector, optionally with total S_z = 0.
///
/// S_z weights are stored doubled (2m) so the constraint is exact integer
/// arithmetic. A negative Hamming weight leaves the popcount free, which
/// together with `encoded_weights` describes binary-encoded boson sectors
/// (sum_k w_k x_k == encoded_total).
struct SectorSpec {
  int n_qubits = 0;
  int hamming_weight = 0;
  std::optional<std::vector<int>> twice_m;
  std::optional<std::vector<int>> encoded_weights;
  int encoded_total = 0;

  void validate() const;
};

/// Half-filled S_z = 0 sector for n_orbitals = 2s+1 Landau orbitals with spin.
/// Qubit 2a is (m_a, up), qubit 2a+1 is (m_a, down), m ascending.
SectorSpec fuzzy_sector_spec(int n_orbitals);

/// n_modes bosonic modes, each on bits_per_mode qubits with weights
/// 1, 2, 4, ...; qubit (mode * bits_per_mode + b) carries 2^b.
SectorSpec boson_sector_spec(int n_modes, int bits_per_mode, int total);

/// Twice the orbital m of every qubit in the fuzzy-sphere register.
std::vector<int> fuzzy_twice_m(int n_orbitals);

class SectorBasis {
 public:
  SectorBasis(SectorSpec spec, std::vector<std::uint64_t> states);

  const SectorSpec& spec() const { return spec_; }
  int n_qubits() const { return spec_.n_qubits; }
  /// Ket integers (qubit 0 = MSB), ascending.
  const std::vector<std::uint64_t>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }
  std::uint64_t state(std::size_t i) const { return states_[i]; }
  /// Position of a ket, or -1 if it is outside the sector.
  std::ptrdiff_t index_of(std::uint64_t ket) const;
  bool contains(std::uint64_t ket) const { return index_of(ket) >= 0; }

 private:
  SectorSpec spec_;
  std::vector<std::uint64_t> states_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

bool satisfies(const SectorSpec& spec, std::uint64_t ket);

SectorBasis enumerate_sector(const SectorSpec& spec);
BigInt count_sector(const SectorSpec& spec);

enum class EdgeRule {
  /// Exchange of any occupied/empty qubit pair.
  kPairSwap,
  /// Same-m pair exchange, or moving two particles between qubit pairs of
  /// equal total m.
  kFuzzyMoves,
};

bool pairwise_swap_graph_connected(const SectorBasis& basis, EdgeRule rule);

/// Matrix of an operator restricted to the sector, <a|op|b>.
Eigen::MatrixXcd project_operator(const PauliSum& op, const SectorBasis& basis);

/// Leakage norm: weight of op|b> outside the sector, summed over b.
double leakage(const PauliSum& op, const SectorBasis& basis);

/// Parses "0101..." (character k = qubit k) into a ket integer.
std::uint64_t parse_bitstring(std::string_view bits);
std::string format_bitstring(int n_qubits, std::uint64_t ket);

}  // namespace lieprep
