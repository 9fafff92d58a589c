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

#include "lieprep/subspace.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <tuple>

namespace lieprep {
namespace {

bool bit_of(int n, std::uint64_t ket, int qubit) {
  return (ket >> (n - 1 - qubit)) & 1;
}

}  // namespace

void SectorSpec::validate() const {
  if (n_qubits <= 0) throw std::invalid_argument("sector needs at least one qubit");
  if (hamming_weight > n_qubits || (hamming_weight < 0 && !encoded_weights)) {
    throw std::invalid_argument("Hamming weight outside [0, n_qubits]");
  }
  if (encoded_weights && static_cast<int>(encoded_weights->size()) != n_qubits) {
    throw std::invalid_argument("encoded weight list length differs from qubit count");
  }
  if (twice_m && static_cast<int>(twice_m->size()) != n_qubits) {
    throw std::invalid_argument("S_z weight list length differs from qubit count");
  }
}

std::vector<int> fuzzy_twice_m(int n_orbitals) {
  if (n_orbitals <= 0) throw std::invalid_argument("need at least one orbital");
  std::vector<int> out;
  for (int a = 0; a < n_orbitals; ++a) {
    out.push_back(2 * a - (n_orbitals - 1));
    out.push_back(2 * a - (n_orbitals - 1));
  }
  return out;
}

SectorSpec fuzzy_sector_spec(int n_orbitals) {
  SectorSpec spec;
  spec.n_qubits = 2 * n_orbitals;
  spec.hamming_weight = n_orbitals;
  spec.twice_m = fuzzy_twice_m(n_orbitals);
  return spec;
}

SectorSpec boson_sector_spec(int n_modes, int bits_per_mode, int total) {
  if (n_modes <= 0 || bits_per_mode <= 0) {
    throw std::invalid_argument("boson sector needs modes and bits");
  }
  SectorSpec spec;
  spec.n_qubits = n_modes * bits_per_mode;
  spec.hamming_weight = -1;
  spec.encoded_weights.emplace();
  for (int a = 0; a < n_modes; ++a) {
    for (int b = 0; b < bits_per_mode; ++b) spec.encoded_weights->push_back(1 << b);
  }
  spec.encoded_total = total;
  return spec;
}

bool satisfies(const SectorSpec& spec, std::uint64_t ket) {
  if (spec.hamming_weight >= 0 && std::popcount(ket) != spec.hamming_weight) {
    return false;
  }
  if (spec.n_qubits < 64 && (ket >> spec.n_qubits) != 0) return false;
  int total = 0, encoded = 0;
  for (int q = 0; q < spec.n_qubits; ++q) {
    if (!bit_of(spec.n_qubits, ket, q)) continue;
    if (spec.twice_m) total += (*spec.twice_m)[q];
    if (spec.encoded_weights) encoded += (*spec.encoded_weights)[q];
  }
  return total == 0 && (!spec.encoded_weights || encoded == spec.encoded_total);
}

SectorBasis::SectorBasis(SectorSpec spec, std::vector<std::uint64_t> states)
    : spec_(std::move(spec)), states_(std::move(states)) {
  spec_.validate();
  if (!std::is_sorted(states_.begin(), states_.end())) {
    throw std::invalid_argument("sector states must be ascending");
  }
  index_.reserve(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (!satisfies(spec_, states_[i])) {
      throw std::invalid_argument("state " + std::to_string(states_[i]) +
                                  " violates the sector constraints");
    }
    if (!index_.emplace(states_[i], i).second) {
      throw std::invalid_argument("duplicate sector state");
    }
  }
}

std::ptrdiff_t SectorBasis::index_of(std::uint64_t ket) const {
  auto it = index_.find(ket);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

SectorBasis enumerate_sector(const SectorSpec& spec) {
  spec.validate();
  if (spec.n_qubits > 30) {
    throw std::length_error("explicit enumeration limited to 30 qubits");
  }
  if (count_sector(spec) > kMaxEnumeratedStates) {
    throw std::length_error("sector too large to enumerate");
  }
  std::vector<std::uint64_t> states;
  const int n = spec.n_qubits, k = spec.hamming_weight;
  if (k < 0) {
    if (n > 24) throw std::length_error("free-weight enumeration limited to 24 qubits");
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
      if (satisfies(spec, v)) states.push_back(v);
    }
  } else if (k == 0) {
    states.push_back(0);
  } else {
    const std::uint64_t last = ((std::uint64_t{1} << k) - 1) << (n - k);
    // Gosper's hack walks weight-k integers in ascending order.
    for (std::uint64_t v = (std::uint64_t{1} << k) - 1;;) {
      if (satisfies(spec, v)) states.push_back(v);
      if (v == last) break;
      const std::uint64_t c = v & (~v + 1);
      const std::uint64_t r = v + c;
      v = (((r ^ v) >> 2) / c) | r;
    }
  }
  return SectorBasis(spec, std::move(states));
}

BigInt count_sector(const SectorSpec& spec) {
  spec.validate();
  // (particles used, accumulated 2m, encoded sum) -> partial assignments.
  using Key = std::tuple<int, int, int>;
  const bool free_weight = spec.hamming_weight < 0;
  std::map<Key, BigInt> layer{{{0, 0, 0}, BigInt(1)}};
  for (int q = 0; q < spec.n_qubits; ++q) {
    const int w = spec.twice_m ? (*spec.twice_m)[q] : 0;
    const int e = spec.encoded_weights ? (*spec.encoded_weights)[q] : 0;
    std::map<Key, BigInt> next;
    for (const auto& [key, count] : layer) {
      next[key] += count;
      const auto [p, m, s] = key;
      if (free_weight || p < spec.hamming_weight) {
        next[{free_weight ? 0 : p + 1, m + w, s + e}] += count;
      }
    }
    layer = std::move(next);
  }
  auto it = layer.find({free_weight ? 0 : spec.hamming_weight, 0,
                        spec.encoded_weights ? spec.encoded_total : 0});
  return it == layer.end() ? BigInt(0) : it->second;
}

bool pairwise_swap_graph_connected(const SectorBasis& basis, EdgeRule rule) {
  const std::size_t w = basis.size();
  if (w <= 1) return true;
  const int n = basis.n_qubits();
  std::vector<int> tm(n, 0);
  if (rule == EdgeRule::kFuzzyMoves) {
    if (!basis.spec().twice_m) {
      throw std::invalid_argument("fuzzy edge rule needs S_z weights");
    }
    tm = *basis.spec().twice_m;
  }
  auto flip = [n](std::uint64_t ket, int q) {
    return ket ^ (std::uint64_t{1} << (n - 1 - q));
  };

  std::vector<char> seen(w, 0);
  std::queue<std::size_t> todo;
  seen[0] = 1;
  todo.push(0);
  std::size_t reached = 1;
  auto visit = [&](std::uint64_t ket) {
    const auto j = basis.index_of(ket);
    if (j >= 0 && !seen[j]) {
      seen[j] = 1;
      ++reached;
      todo.push(static_cast<std::size_t>(j));
    }
  };
  while (!todo.empty()) {
    const std::uint64_t ket = basis.state(todo.front());
    todo.pop();
    std::vector<int> occ, emp;
    for (int q = 0; q < n; ++q) (bit_of(n, ket, q) ? occ : emp).push_back(q);
    for (int i : occ) {
      for (int j : emp) {
        if (rule == EdgeRule::kPairSwap || tm[i] == tm[j]) {
          visit(flip(flip(ket, i), j));
        }
      }
    }
    if (rule != EdgeRule::kFuzzyMoves) continue;
    for (std::size_t a = 0; a < occ.size(); ++a) {
      for (std::size_t b = a + 1; b < occ.size(); ++b) {
        for (std::size_t c = 0; c < emp.size(); ++c) {
          for (std::size_t d = c + 1; d < emp.size(); ++d) {
            if (tm[occ[a]] + tm[occ[b]] != tm[emp[c]] + tm[emp[d]]) continue;
            visit(flip(flip(flip(flip(ket, occ[a]), occ[b]), emp[c]), emp[d]));
          }
        }
      }
    }
  }
  return reached == w;
}

Eigen::MatrixXcd project_operator(const PauliSum& op, const SectorBasis& basis) {
  if (op.n_qubits() != basis.n_qubits()) {
    throw std::invalid_argument("operator and sector have different qubit counts");
  }
  const std::size_t w = basis.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(w, w);
  for (std::size_t col = 0; col < w; ++col) {
    for (const auto& [key, c] : op.terms()) {
      const auto [amp, img] =
          apply_word(op.n_qubits(), key.first, key.second, basis.state(col));
      const auto row = basis.index_of(img);
      if (row >= 0) m(row, col) += c * amp;
    }
  }
  return m;
}

double leakage(const PauliSum& op, const SectorBasis& basis) {
  double total = 0.0;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    std::map<std::uint64_t, cplx> outside;
    for (const auto& [key, c] : op.terms()) {
      const auto [amp, img] =
          apply_word(op.n_qubits(), key.first, key.second, basis.state(col));
      if (!basis.contains(img)) outside[img] += c * amp;
    }
    for (const auto& [ket, a] : outside) total += std::norm(a);
  }
  return std::sqrt(total);
}

std::uint64_t parse_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 64) {
    throw std::invalid_argument("bitstring length must lie in [1, 64]");
  }
  std::uint64_t ket = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw std::invalid_argument("bitstring may contain only 0 and 1");
    }
    ket = (ket << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return ket;
}

std::string format_bitstring(int n_qubits, std::uint64_t ket) {
  std::string out(n_qubits, '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (bit_of(n_qubits, ket, q)) out[q] = '1';
  }
  return out;
}

}  // namespace lieprep
