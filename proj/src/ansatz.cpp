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

#include "plateau/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "plateau/errors.hpp"

namespace plateau {

QubitMask Block::mask() const {
  QubitMask m = 0;
  for (auto q : qubits) {
    if (q > kMaxMaskQubits) throw DimensionError("qubit index exceeds mask width");
    m |= QubitMask{1} << q;
  }
  return m;
}

AnsatzLayout::AnsatzLayout(std::size_t n_qubits, int layer_count, std::vector<Block> blocks)
    : n_qubits_(n_qubits), layer_count_(layer_count), blocks_(std::move(blocks)) {
  if (n_qubits_ == 0 || n_qubits_ > kMaxMaskQubits) {
    throw DimensionError("layout qubit count must be in [1, 63]");
  }
  std::stable_sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) {
    return a.layer != b.layer ? a.layer < b.layer : a.id < b.id;
  });
}

std::size_t AnsatzLayout::index_of(int id) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].id == id) return i;
  }
  throw ConfigError("unknown block id " + std::to_string(id));
}

std::vector<std::string> validate(const AnsatzLayout& layout) {
  std::vector<std::string> out;
  const std::size_t n = layout.n_qubits();
  if (layout.layer_count() < 1) out.push_back("layer count must be at least 1");

  std::set<int> ids;
  std::map<int, QubitMask> used_in_layer;
  QubitMask covered = 0;
  for (const auto& b : layout.blocks()) {
    const std::string name = "block " + std::to_string(b.id);
    if (!ids.insert(b.id).second) out.push_back("duplicate block id " + std::to_string(b.id));
    if (b.layer < 1 || b.layer > layout.layer_count()) {
      out.push_back(name + ": layer " + std::to_string(b.layer) + " outside [1, " +
                    std::to_string(layout.layer_count()) + "]");
    }
    if (b.qubits.empty()) out.push_back(name + ": empty qubit set");
    QubitMask mask = 0;
    bool in_range = true;
    for (auto q : b.qubits) {
      if (q >= n) {
        out.push_back(name + ": qubit " + std::to_string(q) + " out of range");
        in_range = false;
        continue;
      }
      const QubitMask bit = QubitMask{1} << q;
      if (mask & bit) out.push_back(name + ": qubit " + std::to_string(q) + " listed twice");
      mask |= bit;
    }
    if (!in_range) continue;
    QubitMask& used = used_in_layer[b.layer];
    if (used & mask) {
      out.push_back(name + ": shares a qubit with another block of layer " +
                    std::to_string(b.layer));
    }
    used |= mask;
    covered |= mask;
  }
  const QubitMask all = (n >= 64) ? ~QubitMask{0} : ((QubitMask{1} << n) - 1);
  if ((covered & all) != all) {
    std::string missing;
    for (std::size_t q = 0; q < n; ++q) {
      if (!(covered & (QubitMask{1} << q))) {
        if (!missing.empty()) missing += ',';
        missing += std::to_string(q);
      }
    }
    out.push_back("qubits not covered by any block: " + missing);
  }
  return out;
}

void require_valid(const AnsatzLayout& layout) {
  const auto violations = validate(layout);
  if (violations.empty()) return;
  std::string msg = "invalid layout:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw ConfigError(msg);
}

AnsatzLayout make_checkerboard(std::size_t n_qubits, int layers, Topology topology) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw ConfigError("checkerboard needs an even qubit count >= 2");
  }
  if (layers < 1) throw ConfigError("checkerboard needs at least one layer");
  std::vector<Block> blocks;
  int next_id = 1;
  for (int layer = 1; layer <= layers; ++layer) {
    if (layer % 2 == 1) {
      for (std::size_t q = 0; q + 1 < n_qubits; q += 2) {
        blocks.push_back({next_id++, layer, {q, q + 1}});
      }
    } else {
      for (std::size_t q = 1; q + 1 < n_qubits; q += 2) {
        blocks.push_back({next_id++, layer, {q, q + 1}});
      }
      if (topology == Topology::Ring) {
        blocks.push_back({next_id++, layer, {n_qubits - 1, 0}});
      }
    }
  }
  return AnsatzLayout(n_qubits, layers, std::move(blocks));
}

std::size_t CausalCone::qubit_count() const {
  return static_cast<std::size_t>(std::popcount(qubits));
}

CausalCone causal_cone(const PauliString& h, const AnsatzLayout& layout) {
  if (h.n_qubits() != layout.n_qubits()) {
    throw DimensionError("Pauli string and layout disagree on qubit count");
  }
  CausalCone cone;
  QubitMask active = support_mask(h);
  if (active == 0) return cone;
  const auto& blocks = layout.blocks();
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
    const QubitMask m = it->mask();
    if (m & active) {
      cone.blocks.insert(it->id);
      active |= m;
    }
  }
  cone.qubits = active;
  return cone;
}

bool cone_contains(const PauliString& h, const AnsatzLayout& layout, int block_id) {
  layout.index_of(block_id);
  return causal_cone(h, layout).contains(block_id);
}

AnsatzLayout layout_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("checkerboard")) {
      const auto& c = j.at("checkerboard");
      const std::string topo = c.value("topology", std::string("ring"));
      Topology topology;
      if (topo == "ring") {
        topology = Topology::Ring;
      } else if (topo == "line") {
        topology = Topology::Line;
      } else {
        throw ConfigError("unknown topology '" + topo + "'");
      }
      return make_checkerboard(c.at("n").get<std::size_t>(), c.at("layers").get<int>(),
                               topology);
    }
    std::vector<Block> blocks;
    for (const auto& b : j.at("blocks")) {
      blocks.push_back({b.at("id").get<int>(), b.at("layer").get<int>(),
                        b.at("qubits").get<std::vector<std::size_t>>()});
    }
    return AnsatzLayout(j.at("n").get<std::size_t>(), j.at("layers").get<int>(),
                        std::move(blocks));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("layout JSON: ") + e.what());
  }
}

nlohmann::json layout_to_json(const AnsatzLayout& layout) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : layout.blocks()) {
    blocks.push_back({{"id", b.id}, {"layer", b.layer}, {"qubits", b.qubits}});
  }
  return {{"n", layout.n_qubits()}, {"layers", layout.layer_count()}, {"blocks", blocks}};
}

std::string qubits_label(const Block& block) {
  std::string out;
  for (auto q : block.qubits) {
    if (!out.empty()) out += '-';
    out += std::to_string(q);
  }
  return out;
}

}  // namespace plateau
