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

#include "plateau/statevector.hpp"

#include <array>
#include <bit>
#include <cmath>

#include "plateau/errors.hpp"

namespace plateau {

using cplx = std::complex<double>;

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxStateQubits) {
    throw DimensionError("state vector supports 1.." + std::to_string(kMaxStateQubits) +
                         " qubits");
  }
  amps_.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::apply(const Matrix& u, std::span<const std::size_t> qubits) {
  const std::size_t k = qubits.size();
  const std::size_t dim = std::size_t{1} << k;
  if (k == 0 || static_cast<std::size_t>(u.rows()) != dim ||
      static_cast<std::size_t>(u.cols()) != dim) {
    throw DimensionError("gate matrix does not match its qubit count");
  }
  // bit position of each listed qubit, most significant local factor first
  std::array<std::size_t, 16> bits{};
  if (k > bits.size()) throw DimensionError("gate acts on too many qubits");
  std::size_t gate_mask = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (qubits[j] >= n_qubits_) throw DimensionError("gate qubit out of range");
    bits[j] = std::size_t{1} << (n_qubits_ - 1 - qubits[j]);
    if (gate_mask & bits[j]) throw DimensionError("gate lists a qubit twice");
    gate_mask |= bits[j];
  }
  std::vector<std::size_t> offsets(dim);
  for (std::size_t local = 0; local < dim; ++local) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (local & (std::size_t{1} << (k - 1 - j))) off |= bits[j];
    }
    offsets[local] = off;
  }
  std::vector<cplx> in(dim);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & gate_mask) continue;
    for (std::size_t r = 0; r < dim; ++r) in[r] = amps_[base | offsets[r]];
    for (std::size_t r = 0; r < dim; ++r) {
      cplx acc{0.0, 0.0};
      for (std::size_t c = 0; c < dim; ++c) {
        acc += u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      }
      amps_[base | offsets[r]] = acc;
    }
  }
}

void apply_two_qubit(StateVector& state, const Matrix4& u, std::size_t q0, std::size_t q1) {
  if (q0 >= state.n_qubits() || q1 >= state.n_qubits() || q0 == q1) {
    throw DimensionError("invalid qubit pair");
  }
  if (!is_unitary(u)) throw std::invalid_argument("gate matrix is not unitary to 1e-10");
  const std::array<std::size_t, 2> qubits{q0, q1};
  state.apply(u, qubits);
}

cplx pauli_expectation(const StateVector& state, const PauliString& h) {
  const std::size_t n = state.n_qubits();
  if (h.n_qubits() != n) throw DimensionError("observable and state disagree on qubit count");
  std::size_t flip = 0, sign_mask = 0, n_y = 0;
  for (const auto& [q, p] : h.letters()) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    if (p == Pauli::X || p == Pauli::Y) flip |= bit;
    if (p == Pauli::Y || p == Pauli::Z) sign_mask |= bit;
    if (p == Pauli::Y) ++n_y;
  }
  constexpr cplx kPowers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto amps = state.amplitudes();
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const cplx term = std::conj(amps[i ^ flip]) * amps[i];
    acc += (std::popcount(i & sign_mask) % 2) ? -term : term;
  }
  return kPowers[n_y & 3u] * acc;
}

double expectation(const StateVector& state, const Hamiltonian& h) {
  if (h.n_qubits() != state.n_qubits()) {
    throw DimensionError("Hamiltonian and state disagree on qubit count");
  }
  cplx total{0.0, 0.0};
  for (const auto& t : h.terms()) total += t.coefficient * pauli_expectation(state, t.string);
  if (std::abs(total.imag()) > 1e-10) {
    throw std::runtime_error("expectation has imaginary residue " +
                             std::to_string(total.imag()));
  }
  return total.real();
}

}  // namespace plateau
