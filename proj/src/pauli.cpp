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

#include "lieprep/pauli.hpp"

#include <bit>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lieprep {
namespace {

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_qubit_count(int n) {
  if (n <= 0 || n > kMaxPauliQubits) {
    throw std::invalid_argument("qubit count must lie in [1, 64], got " +
                                std::to_string(n));
  }
}

const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int mod4(int p) { return ((p % 4) + 4) % 4; }

}  // namespace

PauliString::PauliString(int n_qubits) : PauliString(n_qubits, 0, 0, 0) {}

PauliString::PauliString(int n_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask, int phase_power)
    : n_(n_qubits), x_(x_mask), z_(z_mask), phase_(mod4(phase_power)) {
  check_qubit_count(n_qubits);
  if ((x_mask | z_mask) & ~low_mask(n_qubits)) {
    throw std::invalid_argument("Pauli mask has bits beyond the register");
  }
}

PauliString PauliString::from_word(std::string_view word) {
  const int n = static_cast<int>(word.size());
  check_qubit_count(n);
  std::uint64_t x = 0, z = 0;
  int phase = 0;
  for (int k = 0; k < n; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    switch (word[k]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Z': z |= bit; break;
      case 'Y': x |= bit; z |= bit; ++phase; break;
      default:
        throw std::invalid_argument("invalid Pauli letter '" +
                                    std::string(1, word[k]) + "'");
    }
  }
  return PauliString(n, x, z, phase);
}

PauliString PauliString::single(int n_qubits, int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw std::out_of_range("qubit index out of range");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (p) {
    case Pauli::I: return PauliString(n_qubits);
    case Pauli::X: return PauliString(n_qubits, bit, 0, 0);
    case Pauli::Z: return PauliString(n_qubits, 0, bit, 0);
    case Pauli::Y: return PauliString(n_qubits, bit, bit, 1);
  }
  return PauliString(n_qubits);
}

Pauli PauliString::at(int qubit) const {
  const bool x = (x_ >> qubit) & 1, z = (z_ >> qubit) & 1;
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

std::string PauliString::word() const {
  static constexpr char kLetters[] = "IXYZ";
  std::string out(n_, 'I');
  for (int k = 0; k < n_; ++k) out[k] = kLetters[static_cast<int>(at(k))];
  return out;
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }

cplx PauliString::word_coefficient() const {
  return kIPow[mod4(phase_ - y_count())];
}

bool PauliString::commutes_with(const PauliString& other) const {
  return ((std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_)) & 1) ==
         0;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("qubit-count mismatch in Pauli product");
  }
  // Z^{z_a} X^{x_b} = (-1)^{|z_a & x_b|} X^{x_b} Z^{z_a}
  const int phase = a.phase_power() + b.phase_power() +
                    2 * std::popcount(a.z_mask() & b.x_mask());
  return PauliString(a.n_qubits(), a.x_mask() ^ b.x_mask(),
                     a.z_mask() ^ b.z_mask(), phase);
}

PauliSum::PauliSum(int n_qubits) : n_(n_qubits) { check_qubit_count(n_qubits); }

PauliSum::PauliSum(const PauliString& s, cplx coefficient)
    : PauliSum(s.n_qubits()) {
  add(s, coefficient);
}

PauliSum PauliSum::identity(int n_qubits, cplx coefficient) {
  PauliSum out(n_qubits);
  out.add(0, 0, coefficient);
  return out;
}

PauliSum PauliSum::term(int n_qubits,
                        std::initializer_list<std::pair<int, Pauli>> factors,
                        cplx coefficient) {
  PauliString s(n_qubits);
  for (const auto& [q, p] : factors) s = s * PauliString::single(n_qubits, q, p);
  return PauliSum(s, coefficient);
}

PauliSum PauliSum::from_word(std::string_view word, cplx coefficient) {
  return PauliSum(PauliString::from_word(word), coefficient);
}

PauliSum PauliSum::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  std::map<Key, cplx> pending;
  std::vector<std::pair<std::string, cplx>> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re, im;
    std::string word;
    if (!(ls >> re)) continue;
    if (!(ls >> im >> word)) {
      throw std::invalid_argument("malformed Pauli-sum line " +
                                  std::to_string(line_no));
    }
    if (n == 0) n = static_cast<int>(word.size());
    if (static_cast<int>(word.size()) != n) {
      throw std::invalid_argument("inconsistent word length on line " +
                                  std::to_string(line_no));
    }
    rows.emplace_back(word, cplx(re, im));
  }
  if (n == 0) throw std::invalid_argument("empty Pauli-sum text");
  PauliSum out(n);
  for (const auto& [word, c] : rows) out += from_word(word, c);
  return out;
}

std::string PauliSum::to_text() const {
  std::string out;
  char buf[96];
  for (const auto& [key, c] : terms_) {
    PauliString s(n_, key.first, key.second, std::popcount(key.first & key.second));
    std::snprintf(buf, sizeof buf, "%.17g %.17g ", c.real(), c.imag());
    out += buf;
    out += s.word();
    out += '\n';
  }
  return out;
}

cplx PauliSum::coefficient(std::string_view word) const {
  const PauliString s = PauliString::from_word(word);
  if (s.n_qubits() != n_) throw std::invalid_argument("word length mismatch");
  auto it = terms_.find({s.x_mask(), s.z_mask()});
  return it == terms_.end() ? cplx{} : it->second;
}

void PauliSum::prune(const Key& key) {
  auto it = terms_.find(key);
  if (it != terms_.end() && std::abs(it->second) <= kPruneTolerance) {
    terms_.erase(it);
  }
}

void PauliSum::add(std::uint64_t x_mask, std::uint64_t z_mask, cplx coefficient) {
  if ((x_mask | z_mask) & ~low_mask(n_)) {
    throw std::invalid_argument("Pauli mask has bits beyond the register");
  }
  const Key key{x_mask, z_mask};
  terms_[key] += coefficient;
  prune(key);
}

void PauliSum::add(const PauliString& s, cplx coefficient) {
  if (s.n_qubits() != n_) throw std::invalid_argument("qubit-count mismatch");
  add(s.x_mask(), s.z_mask(), coefficient * s.word_coefficient());
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_ != n_) throw std::invalid_argument("qubit-count mismatch");
  for (const auto& [key, c] : other.terms_) add(key.first, key.second, c);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  if (other.n_ != n_) throw std::invalid_argument("qubit-count mismatch");
  for (const auto& [key, c] : other.terms_) add(key.first, key.second, -c);
  return *this;
}

PauliSum& PauliSum::operator*=(cplx scalar) {
  for (auto& [key, c] : terms_) c *= scalar;
  std::erase_if(terms_, [](const auto& kv) {
    return std::abs(kv.second) <= kPruneTolerance;
  });
  return *this;
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_);
  for (const auto& [key, c] : terms_) out.terms_[key] = std::conj(c);
  return out;
}

PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
PauliSum operator-(PauliSum a) { return a *= -1.0; }
PauliSum operator*(cplx scalar, PauliSum a) { return a *= scalar; }

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("qubit-count mismatch in Pauli-sum product");
  }
  const int n = a.n_qubits();
  std::map<PauliSum::Key, cplx> acc;
  for (const auto& [ka, ca] : a.terms()) {
    const PauliString sa(n, ka.first, ka.second, std::popcount(ka.first & ka.second));
    for (const auto& [kb, cb] : b.terms()) {
      const PauliString sb(n, kb.first, kb.second, std::popcount(kb.first & kb.second));
      const PauliString p = sa * sb;
      acc[{p.x_mask(), p.z_mask()}] += ca * cb * p.word_coefficient();
    }
  }
  PauliSum out(n);
  for (const auto& [key, c] : acc) out.add(key.first, key.second, c);
  return out;
}

PauliSum commutator(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("qubit-count mismatch in commutator");
  }
  const int n = a.n_qubits();
  std::map<PauliSum::Key, cplx> acc;
  for (const auto& [ka, ca] : a.terms()) {
    const PauliString sa(n, ka.first, ka.second, std::popcount(ka.first & ka.second));
    for (const auto& [kb, cb] : b.terms()) {
      const PauliString sb(n, kb.first, kb.second, std::popcount(kb.first & kb.second));
      if (sa.commutes_with(sb)) continue;
      // Anticommuting words: [A, B] = 2AB.
      const PauliString p = sa * sb;
      acc[{p.x_mask(), p.z_mask()}] += 2.0 * ca * cb * p.word_coefficient();
    }
  }
  PauliSum out(n);
  for (const auto& [key, c] : acc) out.add(key.first, key.second, c);
  return out;
}

std::uint64_t mask_to_ket(int n_qubits, std::uint64_t mask) {
  std::uint64_t out = 0;
  for (int k = 0; k < n_qubits; ++k) {
    if ((mask >> k) & 1) out |= std::uint64_t{1} << (n_qubits - 1 - k);
  }
  return out;
}

std::pair<cplx, std::uint64_t> apply_word(int n_qubits, std::uint64_t x_mask,
                                          std::uint64_t z_mask,
                                          std::uint64_t ket) {
  const std::uint64_t xk = mask_to_ket(n_qubits, x_mask);
  const std::uint64_t zk = mask_to_ket(n_qubits, z_mask);
  // word = i^{#Y} X^x Z^z
  const int phase = std::popcount(x_mask & z_mask) + 2 * std::popcount(zk & ket);
  return {kIPow[mod4(phase)], ket ^ xk};
}

Eigen::MatrixXcd to_matrix(const PauliSum& s) {
  const int n = s.n_qubits();
  if (n > kMaxMatrixQubits) {
    throw std::length_error("dense matrix limited to 14 qubits, got " +
                            std::to_string(n));
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [key, c] : s.terms()) {
    for (std::uint64_t col = 0; col < dim; ++col) {
      const auto [amp, row] = apply_word(n, key.first, key.second, col);
      m(row, col) += c * amp;
    }
  }
  return m;
}

bool is_hermitian(const PauliSum& s, double tolerance) {
  for (const auto& [key, c] : s.terms()) {
    if (std::abs(c.imag()) > tolerance) return false;
  }
  return true;
}

}  // namespace lieprep
