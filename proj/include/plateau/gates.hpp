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

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "plateau/ansatz.hpp"

namespace plateau {

using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

/// Two-qubit block families. haar4 has no angles: each block is a Haar
/// unitary on its qubits.
enum class GateFamily { XzZz, U3Cnot, RyCz, NumberConserving, Cartan, Haar4 };

std::string_view family_name(GateFamily family);
GateFamily parse_family(std::string_view name);
/// Angles per block: 5, 12, 4, 2, 15, 0.
std::size_t param_count(GateFamily family);
std::vector<GateFamily> all_families();

enum class GateKind { RX, RY, RZ, RXX, RYY, RZZ, CNOT, CZ, NumberConserving };

std::string_view gate_name(GateKind kind);
bool is_two_qubit(GateKind kind);

/// One gate of a block template. `local` indexes the block's qubits; `slot`
/// is the first angle the gate consumes (-1 for fixed gates).
struct ElementaryGate {
  GateKind kind;
  std::array<int, 2> local;
  int slot;
};

/// Gates of one block in application order. Rotations are
/// R_P(t) = exp(-i t P / 2); U3(t, p, l) = R_Z(p) R_Y(t) R_Z(l) is expanded
/// into its three rotations, R_Z(l) first, with slots in that order.
const std::vector<ElementaryGate>& block_template(GateFamily family);

Matrix2 rotation(GateKind kind, double angle);  // RX, RY, RZ
Matrix4 two_qubit_gate(GateKind kind, std::span<const double> angles);
/// The 4x4 matrix of a template gate embedded on the block (local qubit 0
/// is the more significant factor).
Matrix4 embed_gate(const ElementaryGate& gate, std::span<const double> block_params);
/// Product of the block's gates.
Matrix4 block_unitary(GateFamily family, std::span<const double> block_params);

/// True when the slot's gate is a Pauli rotation exp(-i t P / 2), i.e. the
/// shift rule applies. Number-conserving slots are not.
bool slot_is_shiftable(GateFamily family, int slot);

/// Flat parameter index of a (block, slot) pair.
struct ParamInfo {
  std::size_t index;
  int block_id;
  int layer;
  int slot;
};

/// Parameter bookkeeping: blocks in application order, slots consecutive.
std::vector<ParamInfo> parameter_table(const AnsatzLayout& layout, GateFamily family);

struct PlacedGate {
  int block_id;
  int layer;
  GateKind kind;
  std::vector<std::size_t> qubits;
  int param_index;  // -1 for fixed gates
  Matrix matrix;    // 2x2 or 4x4
};

/// Gates in ascending (layer, id) order. Requires 2-qubit blocks and a
/// parametric family.
std::vector<PlacedGate> build_circuit(const AnsatzLayout& layout, GateFamily family,
                                      std::span<const double> params);

bool is_unitary(const Matrix& u, double tol = 1e-10);

}  // namespace plateau
