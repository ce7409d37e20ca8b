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

#include "plateau/gates.hpp"

#include <cmath>
#include <complex>

#include <unsupported/Eigen/KroneckerProduct>

#include "plateau/errors.hpp"

namespace plateau {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

Matrix2 pauli2(GateKind kind) {
  Matrix2 p;
  switch (kind) {
    case GateKind::RX: p << 0, 1, 1, 0; break;
    case GateKind::RY: p << 0, -kI, kI, 0; break;
    case GateKind::RZ: p << 1, 0, 0, -1; break;
    default: throw std::logic_error("not a single-qubit rotation");
  }
  return p;
}

std::vector<ElementaryGate> u3(int q, int first_slot) {
  return {{GateKind::RZ, {q, 0}, first_slot},
          {GateKind::RY, {q, 0}, first_slot + 1},
          {GateKind::RZ, {q, 0}, first_slot + 2}};
}

std::vector<ElementaryGate> make_template(GateFamily family) {
  std::vector<ElementaryGate> g;
  auto append = [&g](std::vector<ElementaryGate> more) {
    g.insert(g.end(), more.begin(), more.end());
  };
  switch (family) {
    case GateFamily::XzZz:
      g = {{GateKind::RZ, {0, 0}, 0}, {GateKind::RZ, {1, 0}, 1}, {GateKind::RZZ, {0, 1}, 2},
           {GateKind::RX, {0, 0}, 3}, {GateKind::RX, {1, 0}, 4}};
      break;
    case GateFamily::U3Cnot:
      append(u3(0, 0));
      append(u3(1, 3));
      g.push_back({GateKind::CNOT, {0, 1}, -1});
      append(u3(0, 6));
      append(u3(1, 9));
      break;
    case GateFamily::RyCz:
      g = {{GateKind::RY, {0, 0}, 0}, {GateKind::RY, {1, 0}, 1}, {GateKind::CZ, {0, 1}, -1},
           {GateKind::RY, {0, 0}, 2}, {GateKind::RY, {1, 0}, 3}};
      break;
    case GateFamily::NumberConserving:
      g = {{GateKind::NumberConserving, {0, 1}, 0}};
      break;
    case GateFamily::Cartan:
      append(u3(0, 0));
      append(u3(1, 3));
      g.push_back({GateKind::RXX, {0, 1}, 6});
      g.push_back({GateKind::RYY, {0, 1}, 7});
      g.push_back({GateKind::RZZ, {0, 1}, 8});
      append(u3(0, 9));
      append(u3(1, 12));
      break;
    case GateFamily::Haar4:
      break;
  }
  return g;
}

}  // namespace

std::string_view family_name(GateFamily family) {
  switch (family) {
    case GateFamily::XzZz: return "xz_zz";
    case GateFamily::U3Cnot: return "u3_cnot";
    case GateFamily::RyCz: return "ry_cz";
    case GateFamily::NumberConserving: return "number_conserving";
    case GateFamily::Cartan: return "cartan";
    case GateFamily::Haar4: return "haar4";
  }
  return "?";
}

GateFamily parse_family(std::string_view name) {
  for (auto f : all_families()) {
    if (family_name(f) == name) return f;
  }
  throw ConfigError("unknown gate family '" + std::string(name) + "'");
}

std::size_t param_count(GateFamily family) {
  switch (family) {
    case GateFamily::XzZz: return 5;
    case GateFamily::U3Cnot: return 12;
    case GateFamily::RyCz: return 4;
    case GateFamily::NumberConserving: return 2;
    case GateFamily::Cartan: return 15;
    case GateFamily::Haar4: return 0;
  }
  return 0;
}

std::vector<GateFamily> all_families() {
  return {GateFamily::XzZz, GateFamily::U3Cnot, GateFamily::RyCz,
          GateFamily::NumberConserving, GateFamily::Cartan, GateFamily::Haar4};
}

std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::RXX: return "RXX";
    case GateKind::RYY: return "RYY";
    case GateKind::RZZ: return "RZZ";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::NumberConserving: return "NC";
  }
  return "?";
}

bool is_two_qubit(GateKind kind) {
  return kind != GateKind::RX && kind != GateKind::RY && kind != GateKind::RZ;
}

const std::vector<ElementaryGate>& block_template(GateFamily family) {
  static const std::array<std::vector<ElementaryGate>, 6> kTemplates = {
      make_template(GateFamily::XzZz),   make_template(GateFamily::U3Cnot),
      make_template(GateFamily::RyCz),   make_template(GateFamily::NumberConserving),
      make_template(GateFamily::Cartan), make_template(GateFamily::Haar4)};
  return kTemplates[static_cast<std::size_t>(family)];
}

Matrix2 rotation(GateKind kind, double angle) {
  return std::cos(angle / 2) * Matrix2::Identity() - kI * std::sin(angle / 2) * pauli2(kind);
}

Matrix4 two_qubit_gate(GateKind kind, std::span<const double> angles) {
  Matrix4 m = Matrix4::Zero();
  switch (kind) {
    case GateKind::RXX:
    case GateKind::RYY:
    case GateKind::RZZ: {
      const GateKind single = kind == GateKind::RXX   ? GateKind::RX
                              : kind == GateKind::RYY ? GateKind::RY
                                                      : GateKind::RZ;
      const Matrix2 p = pauli2(single);
      Matrix4 pp = Eigen::kroneckerProduct(p, p);
      m = std::cos(angles[0] / 2) * Matrix4::Identity() - kI * std::sin(angles[0] / 2) * pp;
      break;
    }
    case GateKind::CNOT:
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      break;
    case GateKind::CZ:
      m.diagonal() << 1, 1, 1, -1;
      break;
    case GateKind::NumberConserving: {
      const double t1 = angles[0], t2 = angles[1];
      m(0, 0) = m(3, 3) = 1;
      m(1, 1) = std::cos(t1);
      m(1, 2) = std::exp(kI * t2) * std::sin(t1);
      m(2, 1) = std::exp(-kI * t2) * std::sin(t1);
      m(2, 2) = -std::cos(t1);
      break;
    }
    default:
      throw std::logic_error("not a two-qubit gate");
  }
  return m;
}

Matrix4 embed_gate(const ElementaryGate& gate, std::span<const double> block_params) {
  std::span<const double> angles;
  if (gate.slot >= 0) angles = block_params.subspan(static_cast<std::size_t>(gate.slot));
  if (!is_two_qubit(gate.kind)) {
    const Matrix2 r = rotation(gate.kind, angles[0]);
    return gate.local[0] == 0 ? Matrix4(Eigen::kroneckerProduct(r, Matrix2::Identity()))
                              : Matrix4(Eigen::kroneckerProduct(Matrix2::Identity(), r));
  }
  return two_qubit_gate(gate.kind, angles);
}

Matrix4 block_unitary(GateFamily family, std::span<const double> block_params) {
  if (family == GateFamily::Haar4) throw ConfigError("haar4 blocks have no parametric form");
  if (block_params.size() != param_count(family)) {
    throw DimensionError("block expects " + std::to_string(param_count(family)) + " angles");
  }
  Matrix4 u = Matrix4::Identity();
  for (const auto& g : block_template(family)) u = embed_gate(g, block_params) * u;
  return u;
}

bool slot_is_shiftable(GateFamily family, int slot) {
  for (const auto& g : block_template(family)) {
    if (g.slot == slot) return g.kind != GateKind::NumberConserving;
    if (g.kind == GateKind::NumberConserving && slot == g.slot + 1) return false;
  }
  return false;
}

std::vector<ParamInfo> parameter_table(const AnsatzLayout& layout, GateFamily family) {
  std::vector<ParamInfo> out;
  const auto per_block = param_count(family);
  for (const auto& b : layout.blocks()) {
    for (std::size_t s = 0; s < per_block; ++s) {
      out.push_back({out.size(), b.id, b.layer, static_cast<int>(s)});
    }
  }
  return out;
}

std::vector<PlacedGate> build_circuit(const AnsatzLayout& layout, GateFamily family,
                                      std::span<const double> params) {
  if (family == GateFamily::Haar4) throw ConfigError("haar4 has no gate-level circuit");
  const auto per_block = param_count(family);
  if (params.size() != per_block * layout.blocks().size()) {
    throw DimensionError("expected " + std::to_string(per_block * layout.blocks().size()) +
                         " parameters, got " + std::to_string(params.size()));
  }
  std::vector<PlacedGate> out;
  std::size_t offset = 0;
  for (const auto& b : layout.blocks()) {
    if (b.qubits.size() != 2) {
      throw ConfigError("family " + std::string(family_name(family)) +
                        " needs two-qubit blocks; block " + std::to_string(b.id) + " has " +
                        std::to_string(b.qubits.size()));
    }
    const auto block_params = params.subspan(offset, per_block);
    for (const auto& g : block_template(family)) {
      PlacedGate placed{b.id, b.layer, g.kind, {}, -1, {}};
      std::span<const double> angles;
      if (g.slot >= 0) {
        placed.param_index = static_cast<int>(offset) + g.slot;
        angles = block_params.subspan(static_cast<std::size_t>(g.slot));
      }
      if (is_two_qubit(g.kind)) {
        placed.qubits = {b.qubits[0], b.qubits[1]};
        placed.matrix = two_qubit_gate(g.kind, angles);
      } else {
        placed.qubits = {b.qubits[static_cast<std::size_t>(g.local[0])]};
        placed.matrix = rotation(g.kind, angles[0]);
      }
      out.push_back(std::move(placed));
    }
    offset += per_block;
  }
  return out;
}

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

}  // namespace plateau
