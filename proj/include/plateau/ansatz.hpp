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

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plateau/pauli.hpp"

namespace plateau {

/// A block G_k: an independently parametrized unitary on `qubits` in
/// `layer` (layer 1 acts first on |0...0>). The qubit order is the order of
/// the block's local tensor factors.
struct Block {
  int id;
  int layer;
  std::vector<std::size_t> qubits;

  QubitMask mask() const;
};

enum class Topology { Line, Ring };

/**
 * Static block/layer structure of an ansatz. Blocks are kept in circuit
 * application order: ascending layer, then ascending id. Construction does
 * not check the layout invariants; call validate() or require_valid().
 */
class AnsatzLayout {
 public:
  AnsatzLayout(std::size_t n_qubits, int layer_count, std::vector<Block> blocks);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  int layer_count() const noexcept { return layer_count_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// Position of block `id` in application order; throws ConfigError if absent.
  std::size_t index_of(int id) const;
  const Block& block(int id) const { return blocks_[index_of(id)]; }

 private:
  std::size_t n_qubits_;
  int layer_count_;
  std::vector<Block> blocks_;
};

/// Every violated layout invariant, one message each. Empty means valid.
std::vector<std::string> validate(const AnsatzLayout& layout);
void require_valid(const AnsatzLayout& layout);

/// Brick-layer layout. Odd layers pair (0,1),(2,3),...; even layers pair
/// (1,2),(3,4),... and, for a ring, (n-1,0). Block ids start at 1.
AnsatzLayout make_checkerboard(std::size_t n_qubits, int layers, Topology topology);

struct CausalCone {
  std::set<int> blocks;
  QubitMask qubits = 0;

  std::size_t qubit_count() const;
  bool contains(int block_id) const { return blocks.count(block_id) != 0; }
};

/// Backward sweep from the last layer: a block joins the cone when it touches
/// the active qubit set, which starts at support(h).
CausalCone causal_cone(const PauliString& h, const AnsatzLayout& layout);
bool cone_contains(const PauliString& h, const AnsatzLayout& layout, int block_id);

/// Parses either the explicit form {"n","layers","blocks"} or the
/// {"checkerboard": {"n","layers","topology"}} shortcut.
AnsatzLayout layout_from_json(const nlohmann::json& j);
nlohmann::json layout_to_json(const AnsatzLayout& layout);

std::string qubits_label(const Block& block);

}  // namespace plateau
