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
#include <span>
#include <vector>

#include "plateau/gates.hpp"
#include "plateau/pauli.hpp"

namespace plateau {

inline constexpr std::size_t kMaxStateQubits = 14;

/// Dense n-qubit state, qubit 0 the most significant bit of the amplitude
/// index. Starts in |0...0>.
class StateVector {
 public:
  explicit StateVector(std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::span<const std::complex<double>> amplitudes() const noexcept { return amps_; }
  std::span<std::complex<double>> amplitudes() noexcept { return amps_; }
  double norm() const;

  /// Applies `u` (2^k x 2^k) to the listed qubits; the first listed qubit is
  /// the most significant factor of `u`. No unitarity check.
  void apply(const Matrix& u, std::span<const std::size_t> qubits);

 private:
  std::size_t n_qubits_;
  std::vector<std::complex<double>> amps_;
};

/// Checked two-qubit application: rejects non-unitary input and bad indices.
void apply_two_qubit(StateVector& state, const Matrix4& u, std::size_t q0, std::size_t q1);

/// <psi|h|psi> for one Pauli string.
std::complex<double> pauli_expectation(const StateVector& state, const PauliString& h);
/// <psi|H|psi>; throws if the imaginary residue exceeds 1e-10.
double expectation(const StateVector& state, const Hamiltonian& h);

}  // namespace plateau
