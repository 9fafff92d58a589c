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

#include "lieprep/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lieprep {
namespace {

struct PlaneMasks {
  std::uint64_t select;
  std::uint64_t u;
  std::uint64_t v;
};

PlaneMasks plane_masks(const GateInstance& g, int n) {
  const ActivePair p = active_pair(g.kind);
  const int a = arity(g.kind);
  PlaneMasks m{0, 0, 0};
  for (int k = 0; k < a; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - g.qubits[k]);
    m.select |= bit;
    if ((p.u >> (a - 1 - k)) & 1) m.u |= bit;
    if ((p.v >> (a - 1 - k)) & 1) m.v |= bit;
  }
  return m;
}

std::optional<double> resolve_phi(const GateInstance& g,
                                  const Eigen::VectorXd& params) {
  if (!g.phi) return std::nullopt;
  return g.phi->resolve(params);
}

void apply_block(const GateInstance& g, int n, const Eigen::Matrix2cd& b,
                 Eigen::Ref<Eigen::VectorXcd> state, bool zero_outside) {
  const PlaneMasks m = plane_masks(g, n);
  const std::uint64_t dim = std::uint64_t{1} << n;
  if (static_cast<std::uint64_t>(state.size()) != dim) {
    throw std::invalid_argument("state size does not match register");
  }
  const std::uint64_t flip = m.u ^ m.v;
  for (std::uint64_t k = 0; k < dim; ++k) {
    const std::uint64_t local = k & m.select;
    if (local == m.u) {
      const std::uint64_t kv = k ^ flip;
      const cplx a0 = state[k], a1 = state[kv];
      state[k] = b(0, 0) * a0 + b(0, 1) * a1;
      state[kv] = b(1, 0) * a0 + b(1, 1) * a1;
    } else if (zero_outside && local != m.v) {
      state[k] = 0.0;
    }
  }
}

AngleRef parse_angle(const std::string& tok, int line_no) {
  try {
    if (!tok.empty() && tok[0] == 'p') {
      std::size_t used = 0;
      const int idx = std::stoi(tok.substr(1), &used);
      if (used + 1 != tok.size() || idx < 0) throw std::invalid_argument(tok);
      return {idx, 0.0};
    }
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return {-1, v};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad angle '" + tok + "' on circuit line " +
                                std::to_string(line_no));
  }
}

std::string format_angle(const AngleRef& a) {
  if (a.index >= 0) return "p" + std::to_string(a.index);
  std::ostringstream os;
  os.precision(17);
  os << a.value;
  return os.str();
}

Eigen::VectorXd real_sector_amplitudes(const Circuit& c, const Eigen::VectorXd& p,
                                       const SectorBasis& sector) {
  return restrict_to_sector(apply_circuit(c, p), sector).real();
}

}  // namespace

void Circuit::validate() const {
  if (n_qubits <= 0 || n_qubits > kMaxMatrixQubits) {
    throw std::invalid_argument("circuit register must hold 1..14 qubits");
  }
  if (n_qubits < 64 && (input_state >> n_qubits) != 0) {
    throw std::invalid_argument("input state wider than the register");
  }
  std::vector<char> used(n_params, 0);
  auto check_ref = [&](const AngleRef& a) {
    if (a.index >= n_params) {
      throw std::invalid_argument("parameter index p" + std::to_string(a.index) +
                                  " exceeds the parameter count");
    }
    if (a.index >= 0) used[a.index] = 1;
  };
  for (const auto& g : gates) {
    if (static_cast<int>(g.qubits.size()) != arity(g.kind)) {
      throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                  " needs " + std::to_string(arity(g.kind)) +
                                  " qubits");
    }
    std::set<int> distinct(g.qubits.begin(), g.qubits.end());
    if (distinct.size() != g.qubits.size()) {
      throw std::invalid_argument("gate qubits must be distinct");
    }
    for (int q : g.qubits) {
      if (q < 0 || q >= n_qubits) throw std::invalid_argument("gate qubit out of range");
    }
    if (is_complex(g.kind) != g.phi.has_value()) {
      throw std::invalid_argument(std::string(gate_name(g.kind)) +
                                  (g.phi ? " takes no phase" : " needs a phase"));
    }
    check_ref(g.theta);
    if (g.phi) check_ref(*g.phi);
  }
  for (int k = 0; k < n_params; ++k) {
    if (!used[k]) {
      throw std::invalid_argument("parameter p" + std::to_string(k) + " is unused");
    }
  }
}

bool Circuit::is_real() const {
  return std::none_of(gates.begin(), gates.end(),
                      [](const GateInstance& g) { return is_complex(g.kind); });
}

Circuit parse_circuit(std::string_view text) {
  std::istringstream in{std::string(text)};
  Circuit c;
  std::string line, input_bits;
  int line_no = 0;
  bool have_params = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "qubits") {
      ls >> c.n_qubits;
    } else if (head == "input") {
      ls >> input_bits;
    } else if (head == "params") {
      ls >> c.n_params;
      have_params = true;
    } else {
      GateInstance g{parse_gate_kind(head), {}, {}, std::nullopt};
      std::vector<std::string> toks;
      for (std::string t; ls >> t;) toks.push_back(t);
      const int a = arity(g.kind);
      const int n_angles = is_complex(g.kind) ? 2 : 1;
      if (static_cast<int>(toks.size()) != a + n_angles) {
        throw std::invalid_argument("circuit line " + std::to_string(line_no) +
                                    ": expected " + std::to_string(a) +
                                    " qubits and " + std::to_string(n_angles) +
                                    " angle(s)");
      }
      for (int k = 0; k < a; ++k) g.qubits.push_back(std::stoi(toks[k]));
      g.theta = parse_angle(toks[a], line_no);
      if (n_angles == 2) g.phi = parse_angle(toks[a + 1], line_no);
      c.gates.push_back(std::move(g));
      continue;
    }
    if (ls.fail()) {
      throw std::invalid_argument("malformed header on circuit line " +
                                  std::to_string(line_no));
    }
  }
  if (c.n_qubits <= 0) throw std::invalid_argument("circuit lacks a 'qubits' line");
  if (input_bits.empty()) throw std::invalid_argument("circuit lacks an 'input' line");
  if (static_cast<int>(input_bits.size()) != c.n_qubits) {
    throw std::invalid_argument("input state length differs from qubit count");
  }
  c.input_state = parse_bitstring(input_bits);
  if (!have_params) {
    for (const auto& g : c.gates) {
      c.n_params = std::max(c.n_params, g.theta.index + 1);
      if (g.phi) c.n_params = std::max(c.n_params, g.phi->index + 1);
    }
  }
  c.validate();
  return c;
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

std::string format_circuit(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n_qubits << "\n"
     << "input " << format_bitstring(c.n_qubits, c.input_state) << "\n"
     << "params " << c.n_params << "\n";
  for (const auto& g : c.gates) {
    os << gate_name(g.kind);
    for (int q : g.qubits) os << ' ' << q;
    os << ' ' << format_angle(g.theta);
    if (g.phi) os << ' ' << format_angle(*g.phi);
    os << "\n";
  }
  return os.str();
}

void apply_gate(const GateInstance& g, int n_qubits, const Eigen::VectorXd& params,
                Eigen::Ref<Eigen::VectorXcd> state) {
  apply_block(g, n_qubits,
              gate_block(g.kind, g.theta.resolve(params), resolve_phi(g, params)),
              state, false);
}

void apply_gate_adjoint(const GateInstance& g, int n_qubits,
                        const Eigen::VectorXd& params,
                        Eigen::Ref<Eigen::VectorXcd> state) {
  apply_block(g, n_qubits,
              gate_block(g.kind, g.theta.resolve(params), resolve_phi(g, params))
                  .adjoint(),
              state, false);
}

void apply_gate_derivative(const GateInstance& g, int n_qubits,
                           const Eigen::VectorXd& params,
                           Eigen::Ref<Eigen::VectorXcd> state, bool wrt_phase) {
  const double theta = g.theta.resolve(params);
  const auto phi = resolve_phi(g, params);
  Eigen::Matrix2cd b;
  if (wrt_phase) {
    if (!phi) throw std::invalid_argument("gate has no phase");
    const double s = std::sin(theta);
    const cplx e = std::polar(1.0, *phi);
    b << 0.0, cplx(0, -1) * e * s, cplx(0, -1) * std::conj(e) * s, 0.0;
  } else {
    b = gate_block_derivative(g.kind, theta, phi);
  }
  apply_block(g, n_qubits, b, state, true);
}

Eigen::VectorXcd basis_state(int n_qubits, std::uint64_t ket) {
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits);
  s[static_cast<Eigen::Index>(ket)] = 1.0;
  return s;
}

Eigen::VectorXcd apply_circuit(const Circuit& c, const Eigen::VectorXd& params) {
  if (params.size() != c.n_params) {
    throw std::invalid_argument("expected " + std::to_string(c.n_params) +
                                " parameters, got " + std::to_string(params.size()));
  }
  Eigen::VectorXcd s = basis_state(c.n_qubits, c.input_state);
  for (const auto& g : c.gates) apply_gate(g, c.n_qubits, params, s);
  return s;
}

Eigen::VectorXcd restrict_to_sector(const Eigen::VectorXcd& full,
                                    const SectorBasis& sector) {
  Eigen::VectorXcd out(sector.size());
  for (std::size_t i = 0; i < sector.size(); ++i) out[i] = full[sector.state(i)];
  return out;
}

Eigen::VectorXcd embed_from_sector(const Eigen::VectorXcd& amplitudes,
                                   const SectorBasis& sector) {
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index{1} << sector.n_qubits());
  for (std::size_t i = 0; i < sector.size(); ++i) full[sector.state(i)] = amplitudes[i];
  return full;
}

int numerical_rank(const Eigen::VectorXd& sv, double tolerance) {
  if (sv.size() == 0 || sv.maxCoeff() <= 0.0) return 0;
  const double cut = tolerance * sv.maxCoeff();
  return static_cast<int>((sv.array() > cut).count());
}

Eigen::MatrixXcd jacobian_matrix(const Circuit& c, const Eigen::VectorXd& params,
                                 const SectorBasis& sector) {
  if (params.size() != c.n_params) throw std::invalid_argument("parameter count mismatch");
  const int n = c.n_qubits;
  const std::size_t G = c.gates.size();
  std::vector<Eigen::VectorXcd> before(G);
  Eigen::VectorXcd s = basis_state(n, c.input_state);
  for (std::size_t g = 0; g < G; ++g) {
    before[g] = s;
    apply_gate(c.gates[g], n, params, s);
  }
  Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(s.size(), c.n_params);
  auto insert = [&](std::size_t g, int column, bool wrt_phase) {
    Eigen::VectorXcd d = before[g];
    apply_gate_derivative(c.gates[g], n, params, d, wrt_phase);
    for (std::size_t h = g + 1; h < G; ++h) apply_gate(c.gates[h], n, params, d);
    full.col(column) += d;
  };
  for (std::size_t g = 0; g < G; ++g) {
    if (c.gates[g].theta.index >= 0) insert(g, c.gates[g].theta.index, false);
    if (c.gates[g].phi && c.gates[g].phi->index >= 0) {
      insert(g, c.gates[g].phi->index, true);
    }
  }
  Eigen::MatrixXcd out(sector.size(), c.n_params);
  for (std::size_t i = 0; i < sector.size(); ++i) {
    out.row(i) = full.row(static_cast<Eigen::Index>(sector.state(i)));
  }
  return out;
}

JacobianReport jacobian(const Circuit& c, const Eigen::VectorXd& params,
                        const SectorBasis& sector) {
  JacobianReport rep;
  rep.matrix = jacobian_matrix(c, params, sector);
  if (c.is_real()) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep.matrix.real());
    rep.singular_values = svd.singularValues();
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rep.matrix);
    rep.singular_values = svd.singularValues();
  }
  rep.rank = numerical_rank(rep.singular_values);
  rep.reference_point = params;
  return rep;
}

Eigen::VectorXd random_parameters(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  Eigen::VectorXd p(n);
  for (int k = 0; k < n; ++k) p[k] = u(rng);
  return p;
}

double fit_target(const Circuit& c, const SectorBasis& sector,
                  const Eigen::VectorXd& target, std::uint64_t seed,
                  const ReachOptions& opt, Eigen::VectorXd* best_params) {
  if (!c.is_real()) throw std::invalid_argument("reachability needs a real circuit");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opt.restarts && best >= opt.reached_tolerance; ++r) {
    Eigen::VectorXd th(c.n_params);
    for (int k = 0; k < c.n_params; ++k) th[k] = u(rng);
    Eigen::VectorXd res = real_sector_amplitudes(c, th, sector) - target;
    double cost = res.squaredNorm();
    double lambda = 1e-3;
    for (int it = 0; it < opt.max_iterations && cost > 1e-30; ++it) {
      const Eigen::MatrixXd J = jacobian_matrix(c, th, sector).real();
      const Eigen::MatrixXd A = J.transpose() * J;
      const Eigen::VectorXd grad = J.transpose() * res;
      if (grad.norm() < 1e-18) break;
      bool accepted = false;
      while (lambda < 1e12) {
        Eigen::MatrixXd M = A;
        M.diagonal().array() += lambda;
        const Eigen::VectorXd step = M.ldlt().solve(-grad);
        const Eigen::VectorXd trial = th + step;
        const Eigen::VectorXd tres = real_sector_amplitudes(c, trial, sector) - target;
        const double tcost = tres.squaredNorm();
        if (tcost < cost) {
          th = trial;
          res = tres;
          cost = tcost;
          lambda = std::max(lambda / 3.0, 1e-15);
          accepted = true;
          break;
        }
        lambda *= 4.0;
      }
      if (!accepted) break;
    }
    if (cost < best) {
      best = cost;
      if (best_params) *best_params = th;
    }
  }
  return best;
}

ReachReport reachability_test(const Circuit& c, const SectorBasis& sector,
                              int n_targets, std::uint64_t seed,
                              const ReachOptions& opt) {
  ReachReport rep;
  rep.n_targets = n_targets;
  const Eigen::Index w = static_cast<Eigen::Index>(sector.size());
  for (int t = 0; t < n_targets; ++t) {
    const std::uint64_t stream = seed ^ static_cast<std::uint64_t>(t);
    std::mt19937_64 rng(stream);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd y(w);
    for (Eigen::Index i = 0; i < w; ++i) y[i] = gauss(rng);
    y.normalize();
    const double r = fit_target(c, sector, y, rng(), opt);
    rep.residuals.push_back(r);
    if (r < opt.reached_tolerance) {
      ++rep.reached;
      rep.max_reached_residual = std::max(rep.max_reached_residual, r);
    }
  }
  return rep;
}

Circuit build_spanning_circuit(const SectorBasis& sector, std::uint64_t input_state,
                               const std::vector<GateInstance>& pool,
                               std::uint64_t seed, const SpanningOptions& opt) {
  if (!sector.contains(input_state)) {
    throw std::invalid_argument("input state lies outside the sector");
  }
  const int target_rank = static_cast<int>(sector.size()) - 1;
  Circuit c;
  c.n_qubits = sector.n_qubits();
  c.input_state = input_state;
  // Parameters are drawn per slot from one reference stream, so the
  // reference point of a prefix never changes as gates are appended.
  const Eigen::VectorXd reference = random_parameters(4 * static_cast<int>(pool.size()) + 64, seed);
  auto with_gate = [&](const Circuit& base, const GateInstance& tmpl) {
    Circuit next = base;
    GateInstance g = tmpl;
    g.theta = {next.n_params, 0.0};
    g.phi.reset();
    next.gates.push_back(std::move(g));
    ++next.n_params;
    return next;
  };
  auto rank_of = [&](const Circuit& cc) {
    if (cc.n_params == 0) return 0;
    return jacobian(cc, reference.head(cc.n_params), sector).rank;
  };

  int rank = 0;
  while (rank < target_rank) {
    bool grew = false;
    for (const auto& tmpl : pool) {
      if (static_cast<std::size_t>(c.n_params) >= static_cast<std::size_t>(reference.size())) break;
      Circuit trial = with_gate(c, tmpl);
      const int r = rank_of(trial);
      if (r > rank) {
        c = std::move(trial);
        rank = r;
        grew = true;
        if (rank == target_rank) break;
      }
    }
    if (!grew) {
      throw std::runtime_error("gate pool exhausted at Jacobian rank " +
                               std::to_string(rank) + " of " +
                               std::to_string(target_rank));
    }
  }

  auto probe = [&](const Circuit& cc) {
    return reachability_test(cc, sector, opt.probe_targets, seed, opt.probe).reached;
  };
  int reached = opt.max_extras > 0 ? probe(c) : 0;
  for (int extra = 0; extra < opt.max_extras && reached < opt.probe_targets; ++extra) {
    int best = reached;
    std::optional<Circuit> pick;
    for (const auto& tmpl : pool) {
      Circuit trial = with_gate(c, tmpl);
      const int r = probe(trial);
      if (r > best) {
        best = r;
        pick = std::move(trial);
      }
    }
    if (!pick) break;
    c = std::move(*pick);
    reached = best;
  }
  c.validate();
  return c;
}

std::vector<GateInstance> all_pair_g2_pool(int n_qubits) {
  std::vector<GateInstance> pool;
  for (int i = 0; i < n_qubits; ++i) {
    for (int j = i + 1; j < n_qubits; ++j) {
      pool.push_back({GateKind::G2, {i, j}, {}, std::nullopt});
    }
  }
  return pool;
}

std::vector<GateInstance> fuzzy_gate_pool(int n_orbitals) {
  const std::vector<int> tm = fuzzy_twice_m(n_orbitals);
  const int n = static_cast<int>(tm.size());
  std::vector<GateInstance> pool;
  for (int a = 0; a < n_orbitals; ++a) {
    pool.push_back({GateKind::G2, {2 * a, 2 * a + 1}, {}, std::nullopt});
  }
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t q = p + 1; q < pairs.size(); ++q) {
      const auto [i, j] = pairs[p];
      const auto [k, l] = pairs[q];
      if (i == k || i == l || j == k || j == l) continue;
      if (tm[i] + tm[j] != tm[k] + tm[l]) continue;
      pool.push_back({GateKind::G4, {i, j, k, l}, {}, std::nullopt});
    }
  }
  return pool;
}

}  // namespace lieprep
