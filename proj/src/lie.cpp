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

#include "lieprep/lie.hpp"

#include <cmath>
#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "lieprep/gates.hpp"

namespace lieprep {
namespace {

PauliSum place(int n, const std::vector<int>& qubits,
               std::initializer_list<std::pair<double, const char*>> words) {
  PauliSum out(n);
  for (const auto& [c, w] : words) {
    PauliString s(n);
    for (std::size_t a = 0; a < qubits.size(); ++a) {
      const char ch = w[a];
      const Pauli p = ch == 'X' ? Pauli::X : ch == 'Y' ? Pauli::Y
                    : ch == 'Z' ? Pauli::Z : Pauli::I;
      s = s * PauliString::single(n, qubits[a], p);
    }
    out.add(s, c);
  }
  return out;
}

std::vector<int> all_qubits(int n) {
  std::vector<int> q(n);
  for (int k = 0; k < n; ++k) q[k] = k;
  return q;
}

PauliSum ket_bra(int n, std::uint64_t x, std::uint64_t y) {
  return transition(n, all_qubits(n), format_bitstring(n, x),
                    format_bitstring(n, y));
}

std::string word_of(int n, const PauliSum::Key& key) {
  return PauliString(n, key.first, key.second, 0).word();
}

Eigen::VectorXd flatten(const Eigen::MatrixXcd& m) {
  const Eigen::Index sz = m.size();
  Eigen::VectorXd v(2 * sz);
  for (Eigen::Index k = 0; k < sz; ++k) {
    v[k] = m.data()[k].real();
    v[sz + k] = m.data()[k].imag();
  }
  return v;
}

Eigen::MatrixXcd unflatten(const Eigen::VectorXd& v, Eigen::Index w) {
  Eigen::MatrixXcd m(w, w);
  const Eigen::Index sz = w * w;
  for (Eigen::Index k = 0; k < sz; ++k) m.data()[k] = cplx(v[k], v[sz + k]);
  return m;
}

class OrthoBasis {
 public:
  explicit OrthoBasis(Eigen::Index w) : w_(w) {}

  // Twice-is-enough Gram-Schmidt; returns true if a new direction was added.
  bool admit(const Eigen::MatrixXcd& m) {
    Eigen::VectorXd v = flatten(m);
    const double scale = v.norm();
    if (scale < 1e-300) return false;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : vecs_) v -= b.dot(v) * b;
    }
    const double r = v.norm();
    if (r <= kNewDirectionTolerance * scale) return false;
    vecs_.push_back(v / r);
    mats_.push_back(unflatten(vecs_.back(), w_));
    return true;
  }

  std::size_t size() const { return mats_.size(); }
  const Eigen::MatrixXcd& operator[](std::size_t i) const { return mats_[i]; }
  const std::vector<Eigen::MatrixXcd>& mats() const { return mats_; }

 private:
  Eigen::Index w_;
  std::vector<Eigen::VectorXd> vecs_;
  std::vector<Eigen::MatrixXcd> mats_;
};

}  // namespace

IdentityCheck verify_identity(const PauliSum& a, const PauliSum& b,
                              const PauliSum& rhs) {
  const PauliSum lhs = commutator(a, b);
  IdentityCheck out{true, {}};
  const int n = lhs.n_qubits();
  auto report = [&](const PauliSum::Key& key, cplx l, cplx r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "  %s: lhs %+g%+gi, rhs %+g%+gi\n",
                  word_of(n, key).c_str(), l.real(), l.imag(), r.real(), r.imag());
    out.diff += buf;
    out.holds = false;
  };
  for (const auto& [key, c] : lhs.terms()) {
    auto it = rhs.terms().find(key);
    const cplx r = it == rhs.terms().end() ? cplx{} : it->second;
    if (c != r) report(key, c, r);
  }
  for (const auto& [key, c] : rhs.terms()) {
    if (!lhs.terms().count(key)) report(key, cplx{}, c);
  }
  return out;
}

PauliSum z_on(int n, int q) { return PauliSum::term(n, {{q, Pauli::Z}}); }

PauliSum hop_antisymmetric(int n, int i, int j) {
  return place(n, {i, j}, {{1, "XY"}, {-1, "YX"}});
}

PauliSum hop_symmetric(int n, int i, int j) {
  return place(n, {i, j}, {{1, "XX"}, {1, "YY"}});
}

PauliSum hop4_antisymmetric(int n, int i, int j, int k, int l) {
  return place(n, {i, j, k, l},
               {{1, "XXXY"}, {1, "XXYX"}, {-1, "XYXX"}, {-1, "YXXX"},
                {1, "XYYY"}, {1, "YXYY"}, {-1, "YYXY"}, {-1, "YYYX"}});
}

PauliSum bempa_a(int n, int i, int k) {
  return place(n, {i, k}, {{0.5, "XY"}, {-0.5, "YX"}});
}

PauliSum bempa_b(int n, int i, int j, int k) {
  return place(n, {i, j, k},
               {{0.25, "XXY"}, {-0.25, "YYY"}, {-0.25, "XYX"}, {-0.25, "YXX"}});
}

PauliSum plane_antisymmetric(int n, std::uint64_t x, std::uint64_t y) {
  return ket_bra(n, x, y) - ket_bra(n, y, x);
}

PauliSum plane_symmetric(int n, std::uint64_t x, std::uint64_t y) {
  return cplx(0, 1) * (ket_bra(n, x, y) + ket_bra(n, y, x));
}

PauliSum plane_diagonal(int n, std::uint64_t x, std::uint64_t y) {
  return cplx(0, 1) * (ket_bra(n, x, x) - ket_bra(n, y, y));
}

PauliSum dressed_generator(const PauliSum& base,
                           const std::vector<std::pair<int, int>>& spectators) {
  const int n = base.n_qubits();
  std::uint64_t support = 0;
  for (const auto& [key, c] : base.terms()) support |= key.first | key.second;
  PauliSum out = base;
  for (const auto& [q, bit] : spectators) {
    if (q < 0 || q >= n) throw std::out_of_range("spectator qubit out of range");
    if ((support >> q) & 1) {
      throw std::invalid_argument("spectator qubit " + std::to_string(q) +
                                  " overlaps the generator support");
    }
    const PauliSum proj = PauliSum::identity(n, 0.5) +
                          PauliSum::term(n, {{q, Pauli::Z}}, bit ? -0.5 : 0.5);
    out = out * proj;
    support |= std::uint64_t{1} << q;
  }
  return out;
}

std::vector<NamedIdentity> identity_corpus() {
  std::vector<NamedIdentity> c;
  const cplx i(0, 1);

  // Overlapping two-qubit hops leave a Z on the shared qubit.
  for (auto [n, a, k, b] : {std::array{3, 0, 1, 2}, std::array{4, 0, 2, 3},
                            std::array{4, 3, 0, 1}, std::array{5, 4, 2, 0}}) {
    c.push_back({"[L_" + std::to_string(a) + std::to_string(k) + ", L_" +
                     std::to_string(k) + std::to_string(b) + "] = -2i L_" +
                     std::to_string(a) + std::to_string(b) + " Z_" + std::to_string(k),
                 hop_antisymmetric(n, a, k), hop_antisymmetric(n, k, b),
                 -2.0 * i * hop_antisymmetric(n, a, b) * z_on(n, k)});
  }

  // BEMPA: hop inside a level composed with the level bridge.
  {
    const int n = 4, qi = 0, qk = 1, qj = 2, ql = 3;
    c.push_back({"[GA_ik, GB_kjl] = -i GB_ijl Z_k", bempa_a(n, qi, qk),
                 bempa_b(n, qk, qj, ql),
                 -i * bempa_b(n, qi, qj, ql) * z_on(n, qk)});
  }

  // Two-qubit hop feeding a four-qubit transfer.
  {
    const int n = 5;
    c.push_back({"[L_ij, L_jklm] = -2i L_iklm Z_j", hop_antisymmetric(n, 0, 1),
                 hop4_antisymmetric(n, 1, 2, 3, 4),
                 -2.0 * i * hop4_antisymmetric(n, 0, 2, 3, 4) * z_on(n, 1)});
  }
  {
    const int n = 6;
    c.push_back({"[L_ijkl, L_klmn] = -4i L_ijmn (Z_k + Z_l)",
                 hop4_antisymmetric(n, 0, 1, 2, 3),
                 hop4_antisymmetric(n, 2, 3, 4, 5),
                 -4.0 * i * hop4_antisymmetric(n, 0, 1, 4, 5) *
                     (z_on(n, 2) + z_on(n, 3))});
  }

  // Complex-phase extension: every product of overlapping hops is Z dressed.
  {
    const int n = 3;
    c.push_back({"[La_ik, La_kj] = -2i La_ij Z_k", hop_antisymmetric(n, 0, 1),
                 hop_antisymmetric(n, 1, 2),
                 -2.0 * i * hop_antisymmetric(n, 0, 2) * z_on(n, 1)});
    c.push_back({"[Ls_ik, Ls_kj] = 2i La_ij Z_k", hop_symmetric(n, 0, 1),
                 hop_symmetric(n, 1, 2),
                 2.0 * i * hop_antisymmetric(n, 0, 2) * z_on(n, 1)});
    c.push_back({"[La_ik, Ls_kj] = -2i Ls_ij Z_k", hop_antisymmetric(n, 0, 1),
                 hop_symmetric(n, 1, 2),
                 -2.0 * i * hop_symmetric(n, 0, 2) * z_on(n, 1)});
  }
  {
    const int n = 2;
    c.push_back({"[La_ij, Ls_ij] = 4i (Z_i - Z_j)", hop_antisymmetric(n, 0, 1),
                 hop_symmetric(n, 0, 1), 4.0 * i * (z_on(n, 0) - z_on(n, 1))});
  }

  // Single-plane relations on the (4, 2) sector.
  {
    const int n = 4;
    SectorSpec spec;
    spec.n_qubits = n;
    spec.hamming_weight = 2;
    const SectorBasis sec = enumerate_sector(spec);
    const auto& s = sec.states();
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = 0; b < s.size(); ++b) {
        if (b == a) continue;
        for (std::size_t d = 0; d < s.size(); ++d) {
          if (d == a || d == b) continue;
          c.push_back({"[E_xy, E_yz] = E_xz (" + format_bitstring(n, s[a]) + "," +
                           format_bitstring(n, s[b]) + "," +
                           format_bitstring(n, s[d]) + ")",
                       plane_antisymmetric(n, s[a], s[b]),
                       plane_antisymmetric(n, s[b], s[d]),
                       plane_antisymmetric(n, s[a], s[d])});
        }
      }
    }
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        c.push_back({"[Ea_xy, Es_xy] = 2 Ed_xy (" + format_bitstring(n, s[a]) +
                         "," + format_bitstring(n, s[b]) + ")",
                     plane_antisymmetric(n, s[a], s[b]),
                     plane_symmetric(n, s[a], s[b]),
                     2.0 * plane_diagonal(n, s[a], s[b])});
      }
    }
  }

  {
    const int n = 3;
    c.push_back({"[P, I] = 0", PauliSum::from_word("XYZ"),
                 PauliSum::identity(n), PauliSum(n)});
  }
  return c;
}

GeneratorSet parse_generator_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  GeneratorSet set{0, {}, {}};
  std::string block;
  bool open = false;
  auto flush = [&] {
    if (!open) return;
    PauliSum g = PauliSum::parse(block);
    if (set.n_qubits == 0) set.n_qubits = g.n_qubits();
    if (g.n_qubits() != set.n_qubits) {
      throw std::invalid_argument("generators act on different registers");
    }
    set.generators.push_back(std::move(g));
    block.clear();
  };
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "gen") {
      flush();
      open = true;
      std::string label;
      std::getline(ls, label);
      if (!set.label.empty()) set.label += ";";
      set.label += label.empty() ? std::to_string(set.generators.size()) : label.substr(1);
    } else if (open) {
      block += line + "\n";
    } else if (!head.empty() && head[0] != '#') {
      throw std::invalid_argument("generator file must start with a 'gen' line");
    }
  }
  flush();
  if (set.generators.empty()) throw std::invalid_argument("no generators found");
  return set;
}

ClosureReport closure_of_matrices(const std::vector<Eigen::MatrixXcd>& seeds,
                                  std::vector<Eigen::MatrixXcd>* basis_out) {
  ClosureReport rep;
  if (seeds.empty()) return rep;
  const Eigen::Index w = seeds.front().rows();
  OrthoBasis basis(w);
  for (const auto& m : seeds) basis.admit(m);

  // Pairs (a, b) with b < done are settled; each sweep extends to the
  // elements admitted in the previous one.
  bool all_real = true;
  for (const auto& m : seeds) all_real = all_real && m.imag().isZero(0.0);
  // Nothing can be added beyond so(w) (real seeds) or u(w).
  const std::size_t ceiling =
      all_real ? static_cast<std::size_t>(w * (w - 1) / 2)
               : static_cast<std::size_t>(w * w);
  std::size_t done = 0;
  const int cap = static_cast<int>(w * w);
  while (done < basis.size() && basis.size() < ceiling) {
    if (rep.iterations >= cap) {
      rep.converged = false;
      break;
    }
    ++rep.iterations;
    const std::size_t top = basis.size();
    for (std::size_t b = done; b < top; ++b) {
      for (std::size_t a = 0; a < b; ++a) {
        const Eigen::MatrixXcd comm = basis[a] * basis[b] - basis[b] * basis[a];
        basis.admit(comm);
        if (basis.size() >= ceiling) break;
      }
      if (basis.size() >= ceiling) break;
    }
    done = top;
  }
  rep.dimension = static_cast<int>(basis.size());
  if (basis_out) *basis_out = basis.mats();
  return rep;
}

ClosureReport closure_dimension(const GeneratorSet& gens,
                                const SectorBasis& sector, bool complex_mode) {
  const std::size_t w = sector.size();
  if (w > kMaxClosureSector) {
    throw std::length_error("closure limited to sectors of dimension 64");
  }
  std::vector<Eigen::MatrixXcd> seeds;
  for (const auto& g : gens.generators) {
    Eigen::MatrixXcd m = cplx(0, 1) * project_operator(g, sector);
    if (!complex_mode && m.imag().cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("generator '" + gens.label +
                                  "' is not real in the sector basis");
    }
    seeds.push_back(std::move(m));
  }
  ClosureReport rep = closure_of_matrices(seeds);
  const int wi = static_cast<int>(w);
  rep.target_dim = complex_mode ? wi * wi - 1 : wi * (wi - 1) / 2;
  rep.matched = rep.dimension == *rep.target_dim;
  return rep;
}

}  // namespace lieprep
