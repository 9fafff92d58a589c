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

#include "lieprep/gates.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace lieprep {
namespace {

using std::numbers::pi;

void check_phi(GateKind kind, const std::optional<double>& phi) {
  if (is_complex(kind) && !phi) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " needs a phase");
  }
  if (!is_complex(kind) && phi) {
    throw std::invalid_argument(std::string(gate_name(kind)) +
                                " takes no phase");
  }
}

PauliSum ladder(int n, int q, bool lower) {
  // |0><1| = (X + iY)/2, |1><0| = (X - iY)/2
  PauliSum out = PauliSum::term(n, {{q, Pauli::X}}, 0.5);
  out += PauliSum::term(n, {{q, Pauli::Y}}, cplx(0, lower ? 0.5 : -0.5));
  return out;
}

PauliSum word_sum(std::initializer_list<std::pair<double, const char*>> terms) {
  PauliSum out(static_cast<int>(std::string_view(terms.begin()->second).size()));
  for (const auto& [c, w] : terms) out += PauliSum::from_word(w, c);
  return out;
}

ElementaryGate cnot(int c, int t) { return {ElementaryKind::CNOT, {c, t}, 0.0}; }
ElementaryGate ry(int q, double a) { return {ElementaryKind::RY, {q}, a}; }
ElementaryGate had(int q) { return {ElementaryKind::H, {q}, 0.0}; }
ElementaryGate xg(int q) { return {ElementaryKind::X, {q}, 0.0}; }
ElementaryGate phase(int q, double a) { return {ElementaryKind::PHASE, {q}, a}; }

Decomposition finish(std::vector<ElementaryGate> gates) {
  Decomposition d{std::move(gates), 0, 0};
  const ResourceCount rc = resource_count(d);
  d.declared_cnots = rc.cnots;
  d.declared_depth = rc.depth;
  return d;
}

// Index of the control whose Gray-code bit flips at step t (1-based); the
// last step wraps back to the empty set through the top bit.
int gray_flip_bit(int t, int m) {
  return t == (1 << m) ? m - 1 : std::countr_zero(static_cast<unsigned>(t));
}

}  // namespace

int arity(GateKind kind) {
  switch (kind) {
    case GateKind::G2:
    case GateKind::A2:
    case GateKind::BEMPA_A:
    case GateKind::G2_COMPLEX: return 2;
    case GateKind::BEMPA_B: return 3;
    case GateKind::G4:
    case GateKind::A4:
    case GateKind::G4_COMPLEX: return 4;
  }
  return 0;
}

bool is_complex(GateKind kind) {
  return kind == GateKind::G2_COMPLEX || kind == GateKind::G4_COMPLEX;
}

bool is_reflection(GateKind kind) {
  return kind == GateKind::A2 || kind == GateKind::A4;
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::G2: return "G2";
    case GateKind::A2: return "A2";
    case GateKind::G4: return "G4";
    case GateKind::A4: return "A4";
    case GateKind::BEMPA_A: return "BEMPA_A";
    case GateKind::BEMPA_B: return "BEMPA_B";
    case GateKind::G2_COMPLEX: return "G2_COMPLEX";
    case GateKind::G4_COMPLEX: return "G4_COMPLEX";
  }
  return "?";
}

GateKind parse_gate_kind(std::string_view name) {
  for (GateKind k : kAllGateKinds) {
    if (gate_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

ActivePair active_pair(GateKind kind) {
  switch (kind) {
    case GateKind::G2:
    case GateKind::A2:
    case GateKind::BEMPA_A:
    case GateKind::G2_COMPLEX: return {0b01, 0b10};
    case GateKind::BEMPA_B: return {0b001, 0b110};
    case GateKind::G4:
    case GateKind::A4:
    case GateKind::G4_COMPLEX: return {0b0011, 0b1100};
  }
  return {0, 0};
}

Eigen::Matrix2cd gate_block(GateKind kind, double theta,
                            std::optional<double> phi) {
  check_phi(kind, phi);
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix2cd b;
  if (is_reflection(kind)) {
    b << c, s, s, -c;
  } else if (is_complex(kind)) {
    const cplx e = std::polar(1.0, *phi);
    b << c, -e * s, std::conj(e) * s, c;
  } else {
    b << c, -s, s, c;
  }
  return b;
}

Eigen::Matrix2cd gate_block_derivative(GateKind kind, double theta,
                                       std::optional<double> phi) {
  check_phi(kind, phi);
  const double c = std::cos(theta), s = std::sin(theta);
  Eigen::Matrix2cd b;
  if (is_reflection(kind)) {
    b << -s, c, c, s;
  } else if (is_complex(kind)) {
    const cplx e = std::polar(1.0, *phi);
    b << -s, -e * c, std::conj(e) * c, -s;
  } else {
    b << -s, -c, c, -s;
  }
  return b;
}

Eigen::MatrixXcd gate_matrix(GateKind kind, double theta,
                             std::optional<double> phi) {
  const Eigen::Matrix2cd b = gate_block(kind, theta, phi);
  const int dim = 1 << arity(kind);
  const ActivePair p = active_pair(kind);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  m(p.u, p.u) = b(0, 0);
  m(p.u, p.v) = b(0, 1);
  m(p.v, p.u) = b(1, 0);
  m(p.v, p.v) = b(1, 1);
  return m;
}

PauliSum transition(int n_qubits, const std::vector<int>& qubits,
                    std::string_view u_bits, std::string_view v_bits) {
  if (u_bits.size() != qubits.size() || v_bits.size() != qubits.size()) {
    throw std::invalid_argument("transition bit strings must match qubit list");
  }
  PauliSum out = PauliSum::identity(n_qubits);
  for (std::size_t a = 0; a < qubits.size(); ++a) {
    const int q = qubits[a];
    const bool bu = u_bits[a] == '1', bv = v_bits[a] == '1';
    PauliSum f(n_qubits);
    if (bu == bv) {
      // |b><b| = (I +- Z)/2
      f = PauliSum::identity(n_qubits, 0.5) +
          PauliSum::term(n_qubits, {{q, Pauli::Z}}, bu ? -0.5 : 0.5);
    } else {
      f = ladder(n_qubits, q, !bu);
    }
    out = out * f;
  }
  return out;
}

GeneratorForm generator(GateKind kind, std::optional<double> phi) {
  check_phi(kind, phi);
  const PauliSum l2 = word_sum({{1, "XY"}, {-1, "YX"}});
  const PauliSum l4 = word_sum({{1, "XXXY"}, {1, "XXYX"}, {-1, "XYXX"},
                               {-1, "YXXX"}, {1, "XYYY"}, {1, "YXYY"},
                               {-1, "YYXY"}, {-1, "YYYX"}});
  switch (kind) {
    case GateKind::G2: return {l2, 0.5};
    case GateKind::A2: return {l2, -0.5};
    case GateKind::G4: return {l4, 0.125};
    case GateKind::A4: return {l4, -0.125};
    case GateKind::BEMPA_A: return {0.5 * l2, 1.0};
    case GateKind::BEMPA_B:
      return {word_sum({{0.25, "XXY"}, {-0.25, "YYY"}, {-0.25, "XYX"},
                        {-0.25, "YXX"}}),
              1.0};
    case GateKind::G2_COMPLEX: {
      const PauliSum ls = word_sum({{1, "XX"}, {1, "YY"}});
      return {std::cos(*phi) * l2 - std::sin(*phi) * ls, 0.5};
    }
    case GateKind::G4_COMPLEX: {
      const std::vector<int> q{0, 1, 2, 3};
      const PauliSum ls = 8.0 * (transition(4, q, "0011", "1100") +
                                 transition(4, q, "1100", "0011"));
      return {std::cos(*phi) * l4 - std::sin(*phi) * ls, 0.125};
    }
  }
  throw std::logic_error("unhandled gate kind");
}

ResourceCount resource_count(const Decomposition& d) {
  std::vector<int> level;
  int depth = 0, cnots = 0;
  for (const auto& g : d.gates) {
    int start = 0;
    for (int q : g.qubits) {
      if (q >= static_cast<int>(level.size())) level.resize(q + 1, 0);
      start = std::max(start, level[q]);
    }
    for (int q : g.qubits) level[q] = start + 1;
    depth = std::max(depth, start + 1);
    if (g.kind == ElementaryKind::CNOT) ++cnots;
  }
  return {cnots, depth};
}

void append_multi_controlled_ry(std::vector<ElementaryGate>& out,
                                const std::vector<int>& controls, int target,
                                double alpha) {
  const int m = static_cast<int>(controls.size());
  if (m < 1 || m > 6) throw std::out_of_range("control count must lie in [1, 6]");
  const double step = alpha / static_cast<double>(1 << m);
  // Gray-code bit b drives control m-1-b; the rotation sign is the parity of
  // the current Gray-code set.
  int parity = 0;
  for (int t = 1; t <= (1 << m); ++t) {
    out.push_back(cnot(controls[m - 1 - gray_flip_bit(t, m)], target));
    parity ^= 1;
    out.push_back(ry(target, parity ? -step : step));
  }
}

Decomposition multi_controlled_ry(int m, double alpha) {
  if (m < 1 || m > 6) throw std::out_of_range("control count must lie in [1, 6]");
  std::vector<int> controls(m);
  for (int c = 0; c < m; ++c) controls[c] = c;
  std::vector<ElementaryGate> gates;
  append_multi_controlled_ry(gates, controls, m, alpha);
  return finish(std::move(gates));
}

void append_multi_controlled_phase(std::vector<ElementaryGate>& out,
                                   const std::vector<int>& qubits,
                                   double gamma) {
  const int n = static_cast<int>(qubits.size());
  if (n < 1 || n > 7) throw std::out_of_range("phase gadget needs 1..7 qubits");
  // prod x_q = 2^{1-n} sum_{S != {}} (-1)^{|S|-1} parity_S(x)
  const double unit = gamma / static_cast<double>(1 << (n - 1));
  for (int r = n - 1; r >= 0; --r) {
    const int target = qubits[r];
    if (r == 0) {
      out.push_back(phase(target, unit));
      break;
    }
    int set_size_parity = 0;
    for (int t = 1; t <= (1 << r); ++t) {
      out.push_back(phase(target, set_size_parity ? -unit : unit));
      out.push_back(cnot(qubits[r - 1 - gray_flip_bit(t, r)], target));
      set_size_parity ^= 1;
    }
  }
}

Decomposition decompose(GateKind kind, double theta) {
  std::vector<ElementaryGate> g;
  switch (kind) {
    case GateKind::G2:
    case GateKind::BEMPA_A:
      g = {had(0), cnot(0, 1), ry(0, -theta), ry(1, -theta), cnot(0, 1), had(0)};
      break;
    case GateKind::A2:
      g = {had(0),       cnot(0, 1),       ry(0, theta), ry(1, theta),
           cnot(0, 1),   had(0),           ry(1, -pi / 2), cnot(0, 1),
           ry(1, pi / 2)};
      break;
    case GateKind::BEMPA_B:
      g = {cnot(0, 1), cnot(0, 2), xg(1)};
      append_multi_controlled_ry(g, {1, 2}, 0, 2 * theta);
      g.insert(g.end(), {xg(1), cnot(0, 2), cnot(0, 1)});
      break;
    case GateKind::G4:
      g = {cnot(3, 2), cnot(3, 1), cnot(3, 0), xg(2)};
      append_multi_controlled_ry(g, {0, 1, 2}, 3, -2 * theta);
      g.insert(g.end(), {xg(2), cnot(3, 0), cnot(3, 1), cnot(3, 2)});
      break;
    case GateKind::A4:
      // Mapped block diag(-1, 1) R_y: the reflection is a controlled phase of
      // pi on |1110>.
      g = {cnot(3, 2), cnot(3, 1), cnot(3, 0), xg(2)};
      append_multi_controlled_ry(g, {0, 1, 2}, 3, 2 * theta);
      g.push_back(xg(3));
      append_multi_controlled_phase(g, {0, 1, 2, 3}, pi);
      g.insert(g.end(), {xg(3), xg(2), cnot(3, 0), cnot(3, 1), cnot(3, 2)});
      break;
    default:
      throw std::invalid_argument(std::string(gate_name(kind)) +
                                  " has no elementary decomposition");
  }
  return finish(std::move(g));
}

Eigen::Matrix2cd elementary_single_matrix(const ElementaryGate& g) {
  const double h = 0.5 * g.angle;
  Eigen::Matrix2cd m;
  switch (g.kind) {
    case ElementaryKind::RY: m << std::cos(h), -std::sin(h), std::sin(h), std::cos(h); break;
    case ElementaryKind::RZ: m << std::polar(1.0, -h), 0, 0, std::polar(1.0, h); break;
    case ElementaryKind::H: m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
    case ElementaryKind::X: m << 0, 1, 1, 0; break;
    case ElementaryKind::PHASE: m << 1, 0, 0, std::polar(1.0, g.angle); break;
    case ElementaryKind::CNOT: throw std::invalid_argument("CNOT is two-qubit");
  }
  return m;
}

void apply_elementary(const ElementaryGate& g, int n_qubits,
                      Eigen::Ref<Eigen::VectorXcd> state) {
  const std::uint64_t dim = std::uint64_t{1} << n_qubits;
  if (static_cast<std::uint64_t>(state.size()) != dim) {
    throw std::invalid_argument("state size does not match register");
  }
  for (int q : g.qubits) {
    if (q < 0 || q >= n_qubits) throw std::out_of_range("gate qubit out of range");
  }
  if (g.kind == ElementaryKind::CNOT) {
    const std::uint64_t cb = std::uint64_t{1} << (n_qubits - 1 - g.qubits[0]);
    const std::uint64_t tb = std::uint64_t{1} << (n_qubits - 1 - g.qubits[1]);
    for (std::uint64_t k = 0; k < dim; ++k) {
      if ((k & cb) && !(k & tb)) std::swap(state[k], state[k | tb]);
    }
    return;
  }
  const Eigen::Matrix2cd m = elementary_single_matrix(g);
  const std::uint64_t b = std::uint64_t{1} << (n_qubits - 1 - g.qubits[0]);
  for (std::uint64_t k = 0; k < dim; ++k) {
    if (k & b) continue;
    const cplx a0 = state[k], a1 = state[k | b];
    state[k] = m(0, 0) * a0 + m(0, 1) * a1;
    state[k | b] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

Eigen::MatrixXcd decomposition_matrix(const Decomposition& d, int n_qubits) {
  if (n_qubits > kMaxMatrixQubits) throw std::length_error("register too large");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (const auto& g : d.gates) apply_elementary(g, n_qubits, u.col(col));
  }
  return u;
}

std::string emit_decomposition(const Decomposition& d) {
  std::string out;
  char buf[64];
  for (const auto& g : d.gates) {
    switch (g.kind) {
      case ElementaryKind::CNOT:
        std::snprintf(buf, sizeof buf, "CNOT %d %d\n", g.qubits[0], g.qubits[1]);
        break;
      case ElementaryKind::RY:
        std::snprintf(buf, sizeof buf, "RY %d %.17g\n", g.qubits[0], g.angle);
        break;
      case ElementaryKind::RZ:
        std::snprintf(buf, sizeof buf, "RZ %d %.17g\n", g.qubits[0], g.angle);
        break;
      case ElementaryKind::PHASE:
        std::snprintf(buf, sizeof buf, "PHASE %d %.17g\n", g.qubits[0], g.angle);
        break;
      case ElementaryKind::H: std::snprintf(buf, sizeof buf, "H %d\n", g.qubits[0]); break;
      case ElementaryKind::X: std::snprintf(buf, sizeof buf, "X %d\n", g.qubits[0]); break;
    }
    out += buf;
  }
  return out;
}

}  // namespace lieprep
