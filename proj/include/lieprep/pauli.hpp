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

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

namespace lieprep {

using cplx = std::complex<double>;

inline constexpr int kMaxPauliQubits = 64;
inline constexpr int kMaxMatrixQubits = 14;
inline constexpr double kPruneTolerance = 1e-14;

enum class Pauli : std::uint8_t { I, X, Y, Z };

/// Phase-tracked Pauli string i^phase * prod_k X_k^{x_k} Z_k^{z_k}.
///
/// Bit k of either mask refers to qubit k. A Y factor is stored as both bits
/// set, with one extra power of i in the phase (Y = iXZ), so multiplication is
/// pure bit arithmetic plus a phase counter.
class PauliString {
 public:
  explicit PauliString(int n_qubits);
  PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask,
              int phase_power);

  /// Parses a word over {I,X,Y,Z}; character k is qubit k.
  static PauliString from_word(std::string_view word);
  static PauliString single(int n_qubits, int qubit, Pauli p);

  int n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  int phase_power() const { return phase_; }

  Pauli at(int qubit) const;
  std::string word() const;
  /// Number of Y factors.
  int y_count() const;
  /// Scalar c with this == c * (Hermitian Pauli word).
  cplx word_coefficient() const;

  bool commutes_with(const PauliString& other) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_;
  std::uint64_t x_;
  std::uint64_t z_;
  int phase_;
};

PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  return multiply(a, b);
}

/// Complex-weighted sum of Hermitian Pauli words at fixed qubit count.
///
/// Terms are keyed by (x_mask, z_mask); the stored coefficient multiplies the
/// Hermitian word, so a sum is Hermitian iff every coefficient is real.
class PauliSum {
 public:
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  explicit PauliSum(int n_qubits);
  PauliSum(const PauliString& s, cplx coefficient = 1.0);

  static PauliSum identity(int n_qubits, cplx coefficient = 1.0);
  /// Sum of factors on selected qubits, e.g. term(4, {{0, X}, {2, Y}}).
  static PauliSum term(int n_qubits,
                       std::initializer_list<std::pair<int, Pauli>> factors,
                       cplx coefficient = 1.0);
  static PauliSum from_word(std::string_view word, cplx coefficient = 1.0);

  /// Parses lines of the form "<re> <im> <word>"; '#' starts a comment.
  static PauliSum parse(std::string_view text);
  std::string to_text() const;

  int n_qubits() const { return n_; }
  const std::map<Key, cplx>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  cplx coefficient(std::string_view word) const;

  void add(std::uint64_t x_mask, std::uint64_t z_mask, cplx coefficient);
  void add(const PauliString& s, cplx coefficient = 1.0);

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(cplx scalar);

  PauliSum adjoint() const;

  friend bool operator==(const PauliSum& a, const PauliSum& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  void prune(const Key& key);

  int n_;
  std::map<Key, cplx> terms_;
};

PauliSum operator+(PauliSum a, const PauliSum& b);
PauliSum operator-(PauliSum a, const PauliSum& b);
PauliSum operator-(PauliSum a);
PauliSum operator*(const PauliSum& a, const PauliSum& b);
PauliSum operator*(cplx scalar, PauliSum a);
inline PauliSum operator*(PauliSum a, cplx scalar) {
  return std::move(scalar * std::move(a));
}

/// ab - ba, canonicalized.
PauliSum commutator(const PauliSum& a, const PauliSum& b);

/// Dense matrix with qubit 0 as the most significant bit of the row index.
Eigen::MatrixXcd to_matrix(const PauliSum& s);

bool is_hermitian(const PauliSum& s, double tolerance = 0.0);

/// Action of one Hermitian word on a computational basis ket, where bit
/// (n-1-k) of `ket` holds qubit k. Returns (amplitude, image ket).
std::pair<cplx, std::uint64_t> apply_word(int n_qubits, std::uint64_t x_mask,
                                          std::uint64_t z_mask,
                                          std::uint64_t ket);

/// Converts between qubit-indexed masks and ket integers (qubit 0 = MSB).
std::uint64_t mask_to_ket(int n_qubits, std::uint64_t mask);

}  // namespace lieprep
