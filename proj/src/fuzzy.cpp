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

#include "lieprep/fuzzy.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace lieprep {
namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_int factorial(int n) {
  cpp_int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

PauliSum hop(int n_modes, int to, int from) {
  return jordan_wigner({{{to, true}, {from, false}}, 1.0}, n_modes);
}

}  // namespace

double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  for (auto [tj, tm] : {std::pair{tj1, tm1}, {tj2, tm2}, {tj3, tm3}}) {
    if (tj < 0 || std::abs(tm) > tj || (tj + tm) % 2 != 0) return 0.0;
  }
  if ((tj1 + tj2 + tj3) % 2 != 0) return 0.0;
  if (tj3 > tj1 + tj2 || tj3 < std::abs(tj1 - tj2)) return 0.0;

  const int a = (tj1 + tj2 - tj3) / 2, b = (tj1 - tj2 + tj3) / 2,
            c = (-tj1 + tj2 + tj3) / 2, d = (tj1 + tj2 + tj3) / 2 + 1;
  const int d1 = (tj3 - tj2 + tm1) / 2, d2 = (tj3 - tj1 - tm2) / 2;
  const int d4 = (tj1 - tm1) / 2, d5 = (tj2 + tm2) / 2;
  const int kmin = std::max({0, -d1, -d2});
  const int kmax = std::min({a, d4, d5});
  cpp_rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const cpp_int den = factorial(k) * factorial(d1 + k) * factorial(d2 + k) *
                        factorial(a - k) * factorial(d4 - k) * factorial(d5 - k);
    sum += cpp_rational(k % 2 == 0 ? 1 : -1, den);
  }
  if (sum == 0) return 0.0;
  const cpp_rational square =
      cpp_rational(factorial(a) * factorial(b) * factorial(c), factorial(d)) *
      cpp_rational(factorial((tj1 + tm1) / 2) * factorial((tj1 - tm1) / 2) *
                   factorial((tj2 + tm2) / 2) * factorial((tj2 - tm2) / 2) *
                   factorial((tj3 + tm3) / 2) * factorial((tj3 - tm3) / 2)) *
      sum * sum;
  const int phase = ((tj1 - tj2 - tm3) / 2) % 2 == 0 ? 1 : -1;
  const double sign = sum > 0 ? phase : -phase;
  return sign * std::sqrt(square.convert_to<double>());
}

std::map<std::array<int, 4>, double> potential_tensor(const ModelParams& p) {
  if (p.twice_s < 1) throw std::invalid_argument("orbital spin s must be at least 1/2");
  const int ts = p.twice_s, n = p.n_orbitals();
  const double vl[2] = {p.v0, p.v1};
  std::map<std::array<int, 4>, double> out;
  auto tm = [ts](int a) { return 2 * a - ts; };
  for (int a1 = 0; a1 < n; ++a1) {
    for (int a2 = 0; a2 < n; ++a2) {
      for (int a3 = 0; a3 < n; ++a3) {
        for (int a4 = 0; a4 < n; ++a4) {
          if (tm(a1) + tm(a2) != tm(a3) + tm(a4)) continue;
          double v = 0.0;
          for (int l = 0; l < 2; ++l) {
            if (vl[l] == 0.0) continue;
            const int tj3 = 2 * (ts - l);
            v += vl[l] * (2.0 * ts - 2 * l + 1) *
                 wigner_3j(ts, ts, tj3, tm(a1), tm(a2), -tm(a1) - tm(a2)) *
                 wigner_3j(ts, ts, tj3, tm(a3), tm(a4), -tm(a3) - tm(a4));
          }
          if (v != 0.0) out[{a1, a2, a3, a4}] = v;
        }
      }
    }
  }
  return out;
}

PauliSum jordan_wigner(const FermionTerm& t, int n_modes) {
  PauliSum out = PauliSum::identity(n_modes, t.coefficient);
  for (const auto& [k, dagger] : t.ops) {
    if (k < 0 || k >= n_modes) {
      throw std::out_of_range("mode " + std::to_string(k) + " outside register of " +
                              std::to_string(n_modes));
    }
    PauliString zs(n_modes);
    for (int q = 0; q < k; ++q) zs = zs * PauliString::single(n_modes, q, Pauli::Z);
    PauliSum f(n_modes);
    f.add(zs * PauliString::single(n_modes, k, Pauli::X), 0.5);
    f.add(zs * PauliString::single(n_modes, k, Pauli::Y), cplx(0, dagger ? -0.5 : 0.5));
    out = out * f;
  }
  return out;
}

PauliSum build_hamiltonian(const ModelParams& p) {
  if (p.twice_s < 1) throw std::invalid_argument("orbital spin s must be at least 1/2");
  const int nm = p.n_modes();
  if (nm > 16) throw std::length_error("fuzzy register limited to 16 modes");
  PauliSum h(nm);
  // (1 - s_a s_b) keeps only opposite-spin pairs, each with weight 2.
  for (const auto& [idx, v] : potential_tensor(p)) {
    const auto [a1, a2, a3, a4] = idx;
    for (int sa = 0; sa < 2; ++sa) {
      const int sb = 1 - sa;
      h += jordan_wigner({{{mode_index(a1, sa), true},
                           {mode_index(a3, sa), false},
                           {mode_index(a2, sb), true},
                           {mode_index(a4, sb), false}},
                          2.0 * v},
                         nm);
    }
  }
  for (int a = 0; a < p.n_orbitals(); ++a) {
    h -= p.h * (hop(nm, mode_index(a, 0), mode_index(a, 1)) +
                hop(nm, mode_index(a, 1), mode_index(a, 0)));
  }
  return h;
}

PauliSum number_operator(int n_modes) {
  PauliSum n(n_modes);
  for (int k = 0; k < n_modes; ++k) n += hop(n_modes, k, k);
  return n;
}

PauliSum sz_operator(int twice_s) {
  const int nm = 2 * (twice_s + 1);
  const std::vector<int> tm = fuzzy_twice_m(twice_s + 1);
  PauliSum s(nm);
  for (int k = 0; k < nm; ++k) {
    s += (0.25 * tm[k]) * (PauliSum::identity(nm) - PauliSum::term(nm, {{k, Pauli::Z}}));
  }
  return s;
}

PauliSum l_squared_operator(int twice_s) {
  const int no = twice_s + 1, nm = 2 * no;
  PauliSum lz(nm), lp(nm);
  for (int a = 0; a < no; ++a) {
    const int tm = 2 * a - twice_s;
    for (int sp = 0; sp < 2; ++sp) {
      lz += (0.5 * tm) * hop(nm, mode_index(a, sp), mode_index(a, sp));
      if (a + 1 < no) {
        const double coef =
            0.5 * std::sqrt(static_cast<double>(twice_s * (twice_s + 2) - tm * (tm + 2)));
        lp += coef * hop(nm, mode_index(a + 1, sp), mode_index(a, sp));
      }
    }
  }
  return lp.adjoint() * lp + lz * lz + lz;
}

PauliSum z2_parity_operator(int twice_s) {
  const int no = twice_s + 1, nm = 2 * no;
  PauliSum p = PauliSum::identity(nm);
  for (int a = 0; a < no; ++a) {
    const int u = mode_index(a, 0), d = mode_index(a, 1);
    PauliSum swap = PauliSum::identity(nm) - hop(nm, u, u) - hop(nm, d, d) +
                    hop(nm, u, d) + hop(nm, d, u);
    p = p * swap;
  }
  return p;
}

EigenSystem exact_diagonalize(const PauliSum& h, const SectorBasis& sector) {
  if (sector.size() > kMaxDenseSector) {
    throw std::length_error("dense diagonalization limited to 4096 states");
  }
  const Eigen::MatrixXcd m = project_operator(h, sector);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::runtime_error("sector projection of H is not Hermitian");
  }
  if (m.imag().cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::runtime_error("sector projection of H is not real");
  }
  const Eigen::MatrixXd r = 0.5 * (m.real() + m.real().transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

QuantumNumbers quantum_numbers(const Eigen::VectorXd& v, const SectorBasis& sector,
                               int twice_s) {
  const Eigen::MatrixXd l2 = project_operator(l_squared_operator(twice_s), sector).real();
  const Eigen::MatrixXd par = project_operator(z2_parity_operator(twice_s), sector).real();
  const double cas = v.dot(l2 * v), pe = v.dot(par * v);
  const int ell = static_cast<int>(std::lround((-1.0 + std::sqrt(1.0 + 4.0 * std::max(cas, 0.0))) / 2));
  if (std::abs(cas - ell * (ell + 1.0)) > 1e-6) {
    throw std::runtime_error("L^2 expectation " + std::to_string(cas) +
                             " is not of the form l(l+1)");
  }
  const int z2 = pe >= 0 ? 1 : -1;
  if (std::abs(pe - z2) > 1e-8) {
    throw std::runtime_error("parity expectation " + std::to_string(pe) +
                             " is not +-1");
  }
  return {ell, z2, cas, pe};
}

std::vector<QuantumNumbers> resolve_symmetries(EigenSystem& es,
                                               const SectorBasis& sector,
                                               int twice_s, double degeneracy) {
  const Eigen::MatrixXd l2 = project_operator(l_squared_operator(twice_s), sector).real();
  const Eigen::MatrixXd par = project_operator(z2_parity_operator(twice_s), sector).real();
  const Eigen::Index w = es.energies.size();
  for (Eigen::Index start = 0; start < w;) {
    Eigen::Index end = start + 1;
    while (end < w && es.energies[end] - es.energies[end - 1] < degeneracy) ++end;
    const Eigen::Index k = end - start;
    if (k > 1) {
      // Diagonalize L^2 within the block, then P within each L^2 eigenspace.
      Eigen::MatrixXd block = es.vectors.middleCols(start, k);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sl(block.transpose() * l2 * block);
      block = block * sl.eigenvectors();
      const Eigen::VectorXd cas = sl.eigenvalues();
      for (Eigen::Index a = 0; a < k;) {
        Eigen::Index b = a + 1;
        while (b < k && cas[b] - cas[b - 1] < 1e-6) ++b;
        if (b - a > 1) {
          Eigen::MatrixXd sub = block.middleCols(a, b - a);
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sp(sub.transpose() * par * sub);
          block.middleCols(a, b - a) = sub * sp.eigenvectors();
        }
        a = b;
      }
      es.vectors.middleCols(start, k) = block;
    }
    start = end;
  }
  std::vector<QuantumNumbers> out;
  out.reserve(w);
  for (Eigen::Index i = 0; i < w; ++i) {
    const Eigen::VectorXd v = es.vectors.col(i);
    const double cas = v.dot(l2 * v), pe = v.dot(par * v);
    const int ell = static_cast<int>(
        std::lround((-1.0 + std::sqrt(1.0 + 4.0 * std::max(cas, 0.0))) / 2));
    const int z2 = pe >= 0 ? 1 : -1;
    if (std::abs(cas - ell * (ell + 1.0)) > 1e-6 || std::abs(pe - z2) > 1e-8) {
      throw std::runtime_error("state " + std::to_string(i) +
                               " has no sharp (l, Z2) after block resolution");
    }
    out.push_back({ell, z2, cas, pe});
  }
  return out;
}

std::vector<SpectrumEntry> rescale_spectrum(const Eigen::VectorXd& energies,
                                            const std::vector<QuantumNumbers>& q) {
  if (energies.size() == 0 || static_cast<std::size_t>(energies.size()) != q.size()) {
    throw std::invalid_argument("energies and quantum numbers must align");
  }
  const double e0 = energies.minCoeff();
  std::optional<double> et;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i].ell == 2 && q[i].z2 == 1 && energies[i] > e0 &&
        (!et || energies[i] < *et)) {
      et = energies[i];
    }
  }
  if (!et) throw std::runtime_error("no Z2-even l = 2 state to calibrate against");
  std::vector<SpectrumEntry> out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    out.push_back({energies[i], 3.0 * (energies[i] - e0) / (*et - e0), q[i].ell, q[i].z2});
  }
  return out;
}

}  // namespace lieprep
