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

#include <array>
#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lieprep/pauli.hpp"
#include "lieprep/subspace.hpp"

namespace lieprep {

/// Wigner 3j symbol; all arguments are doubled (2j, 2m). Evaluated with the
/// Racah sum in exact rational arithmetic.
double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3);

struct ModelParams {
  int twice_s = 3;
  double v0 = 4.75;
  double v1 = 1.0;
  double h = 6.32;

  int n_orbitals() const { return twice_s + 1; }
  int n_modes() const { return 2 * n_orbitals(); }
};

/// Mode of orbital a (m = a - s) with spin 0 = up, 1 = down.
inline int mode_index(int orbital, int spin) { return 2 * orbital + spin; }

/// V_{m1 m2 m3 m4} keyed by orbital indices; only nonzero entries stored.
std::map<std::array<int, 4>, double> potential_tensor(const ModelParams& p);

struct FermionTerm {
  /// (mode, creation?) applied right to left as written left to right.
  std::vector<std::pair<int, bool>> ops;
  cplx coefficient = 1.0;
};

/// c_k = (X_k + iY_k)/2 Z_0 ... Z_{k-1}.
PauliSum jordan_wigner(const FermionTerm& t, int n_modes);

PauliSum build_hamiltonian(const ModelParams& p);
PauliSum number_operator(int n_modes);
/// sum_k m_k (I - Z_k)/2 over the fuzzy register.
PauliSum sz_operator(int twice_s);
/// Total orbital angular momentum Casimir L^2 = L_- L_+ + L_z^2 + L_z.
PauliSum l_squared_operator(int twice_s);
/// Up/down exchange on every orbital (fermionic swap per orbital).
PauliSum z2_parity_operator(int twice_s);

inline constexpr std::size_t kMaxDenseSector = 4096;

struct EigenSystem {
  Eigen::VectorXd energies;
  /// Columns are sector-basis eigenvectors.
  Eigen::MatrixXd vectors;
};

/// Dense diagonalization of H restricted to the sector (ascending).
EigenSystem exact_diagonalize(const PauliSum& h, const SectorBasis& sector);

struct QuantumNumbers {
  int ell;
  int z2;
  double casimir;
  double parity;
};

/// ell from <L^2> = ell(ell+1) and z2 from <P>; throws when either is not
/// sharp to 1e-6 / 1e-8.
QuantumNumbers quantum_numbers(const Eigen::VectorXd& v, const SectorBasis& sector,
                               int twice_s);

/// Rotates every degenerate block (energies within `degeneracy`) onto joint
/// eigenvectors of L^2 and P, then assigns quantum numbers to all states.
std::vector<QuantumNumbers> resolve_symmetries(EigenSystem& es,
                                               const SectorBasis& sector,
                                               int twice_s,
                                               double degeneracy = 1e-9);

struct SpectrumEntry {
  double energy;
  double dimension;
  int ell;
  int z2;
};

/// dimension_i = 3 (E_i - E_0) / (E_T - E_0), with T the lowest Z2-even
/// ell = 2 state above the ground state.
std::vector<SpectrumEntry> rescale_spectrum(const Eigen::VectorXd& energies,
                                            const std::vector<QuantumNumbers>& q);

}  // namespace lieprep
