// Copyright 2026 The plateau-scope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace plateau {

/// Bitmask over qubit indices; bit q set means qubit q is a member.
using QubitMask = std::uint64_t;

inline constexpr std::size_t kMaxMaskQubits = 63;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/**
 * Sparse n-qubit Pauli string. Only non-identity letters are stored, so an
 * empty letter map is the trivial string. Text form is an n-character word
 * over {I,X,Y,Z} with qubit 0 leftmost.
 */
class PauliString {
 public:
  explicit PauliString(std::size_t n_qubits);
  PauliString(std::size_t n_qubits, const std::map<std::size_t, Pauli>& letters);

  static PauliString parse(std::string_view word);
  /// Single non-identity letter `p` on qubit `q`.
  static PauliString single(std::size_t n_qubits, std::size_t q, Pauli p);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const std::map<std::size_t, Pauli>& letters() const noexcept { return letters_; }
  Pauli at(std::size_t q) const;
  bool is_trivial() const noexcept { return letters_.empty(); }
  std::size_t weight() const noexcept { return letters_.size(); }
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  std::size_t n_qubits_;
  std::map<std::size_t, Pauli> letters_;
};

/// A Pauli string times i^power, power in {0,1,2,3}.
struct PhasedString {
  std::uint8_t power = 0;
  PauliString string;

  std::complex<double> phase() const;
};

PhasedString pauli_mul(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);
std::vector<std::size_t> support(const PauliString& h);
/// Support as a bitmask; requires n_qubits <= 63.
QubitMask support_mask(const PauliString& h);
bool is_diagonal(const PauliString& h);

inline constexpr std::size_t kDefaultMatrixQubitCap = 12;

/// Dense Kronecker expansion with qubit 0 as the most significant factor.
Eigen::MatrixXcd to_matrix(const PauliString& h,
                           std::size_t max_qubits = kDefaultMatrixQubitCap);

struct Term {
  double coefficient;
  PauliString string;
};

/// H = sum_i c_i h_i with distinct strings and finite nonzero coefficients.
class Hamiltonian {
 public:
  explicit Hamiltonian(std::size_t n_qubits) : n_qubits_(n_qubits) {}
  Hamiltonian(std::size_t n_qubits, std::vector<Term> terms);

  /// One `<coefficient> <word>` per line. Blank lines and `#` comments are
  /// skipped. The qubit count comes from `n_qubits` or the first word.
  static Hamiltonian parse(std::string_view text,
                           std::optional<std::size_t> n_qubits = std::nullopt);

  void add_term(double coefficient, PauliString string);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::string to_string() const;

 private:
  std::size_t n_qubits_;
  std::vector<Term> terms_;
};

Hamiltonian operator+(const Hamiltonian& a, const Hamiltonian& b);

}  // namespace plateau
