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

#include "plateau/design_engine.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "plateau/errors.hpp"

namespace plateau {

namespace {

inline constexpr int kMaxBlockQubits = 20;

template <class Weight>
Weight ratio(std::int64_t num, std::int64_t den) {
  return Weight(num) / Weight(den);
}

std::int64_t pow_int(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int block_size(QubitMask y) {
  if (y == 0) throw ConfigError("mixer needs a nonempty qubit set");
  const int m = std::popcount(y);
  if (m > kMaxBlockQubits) throw DimensionError("block too large for the support engine");
  return m;
}

template <class Weight>
bool negligible(const Weight& w) {
  if constexpr (std::is_floating_point_v<Weight>) {
    return w < kPruneThreshold;
  } else {
    return w == 0;
  }
}

template <class Weight>
bool valid_mass(const Weight& w) {
  if constexpr (std::is_floating_point_v<Weight>) {
    return std::isfinite(w) && w >= 0;
  } else {
    return w >= 0;
  }
}

// Uniform redistribution of each overlapping pattern's mass over Y.
template <class Weight>
SupportDistribution<Weight> redistribute(const std::map<QubitMask, Weight>& untouched,
                                         const std::map<QubitMask, Weight>& by_base,
                                         QubitMask y, std::size_t n_qubits) {
  const int m = block_size(y);
  const std::int64_t denom = pow_int(4, m) - 1;
  std::vector<std::pair<QubitMask, Weight>> shares;
  for (QubitMask t = y; t != 0; t = (t - 1) & y) {
    shares.emplace_back(t, ratio<Weight>(pow_int(3, std::popcount(t)), denom));
  }
  SupportDistribution<Weight> out(n_qubits);
  for (const auto& [s, w] : untouched) out.add(s, w);
  for (const auto& [base, w] : by_base) {
    for (const auto& [t, share] : shares) out.add(base | t, w * share);
  }
  return out;
}

}  // namespace

template <class Weight>
SupportDistribution<Weight>::SupportDistribution(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxMaskQubits) {
    throw DimensionError("support distribution needs 1..63 qubits");
  }
}

template <class Weight>
Weight SupportDistribution<Weight>::at(QubitMask pattern) const {
  const auto it = weights_.find(pattern);
  return it == weights_.end() ? Weight(0) : it->second;
}

template <class Weight>
Weight SupportDistribution<Weight>::total() const {
  Weight sum(0);
  for (const auto& [s, w] : weights_) sum += w;
  return sum;
}

template <class Weight>
void SupportDistribution<Weight>::add(QubitMask pattern, const Weight& mass) {
  if (!valid_mass(mass)) throw std::invalid_argument("support mass must be finite and >= 0");
  if (n_qubits_ < 64 && (pattern >> n_qubits_) != 0) {
    throw DimensionError("support pattern outside the register");
  }
  Weight& slot = weights_[pattern];
  slot += mass;
  if (negligible(slot)) weights_.erase(pattern);
}

void validate_diff(const DiffSpec& diff, const AnsatzLayout& layout) {
  const Block& block = layout.block(diff.block_id);
  if (diff.generator.n_qubits() != layout.n_qubits()) {
    throw DimensionError("generator and layout disagree on qubit count");
  }
  if (diff.generator.is_trivial()) throw ConfigError("generator must be a nontrivial Pauli string");
  if ((support_mask(diff.generator) & ~block.mask()) != 0) {
    throw ConfigError("generator " + diff.generator.to_string() + " leaves block " +
                      std::to_string(diff.block_id));
  }
}

template <class Weight>
SupportDistribution<Weight> lift(const PauliString& h) {
  SupportDistribution<Weight> d(h.n_qubits());
  d.add(support_mask(h), Weight(1));
  return d;
}

template <class Weight>
SupportDistribution<Weight> apply_mixer(const SupportDistribution<Weight>& d, QubitMask y) {
  block_size(y);
  std::map<QubitMask, Weight> untouched, by_base;
  for (const auto& [s, w] : d.weights()) {
    if (s & y) {
      by_base[s & ~y] += w;
    } else {
      untouched[s] += w;
    }
  }
  return redistribute(untouched, by_base, y, d.n_qubits());
}

template <class Weight>
SupportDistribution<Weight> apply_diff_block(const SupportDistribution<Weight>& d,
                                             QubitMask y) {
  const int m = block_size(y);
  const Weight gain = ratio<Weight>(2 * pow_int(4, m), pow_int(4, m) - 1);
  std::map<QubitMask, Weight> by_base;
  for (const auto& [s, w] : d.weights()) {
    if (s & y) by_base[s & ~y] += w * gain;
  }
  return redistribute(std::map<QubitMask, Weight>{}, by_base, y, d.n_qubits());
}

template <class Weight>
Weight measure_zero_state(const SupportDistribution<Weight>& d) {
  Weight sum(0);
  for (const auto& [s, w] : d.weights()) {
    sum += w * ratio<Weight>(1, pow_int(3, std::popcount(s)));
  }
  return sum;
}

template <class Weight>
Weight string_variance(const PauliString& h, const AnsatzLayout& layout, int block_id) {
  const std::size_t k = layout.index_of(block_id);
  if (!causal_cone(h, layout).contains(block_id)) return Weight(0);
  const auto& blocks = layout.blocks();
  auto d = lift<Weight>(h);
  for (std::size_t i = blocks.size(); i-- > k + 1;) d = apply_mixer(d, blocks[i].mask());
  d = apply_diff_block(d, blocks[k].mask());
  for (std::size_t i = k; i-- > 0;) d = apply_mixer(d, blocks[i].mask());
  return measure_zero_state(d);
}

template <class Weight>
Weight exact_variance(const Hamiltonian& h, const AnsatzLayout& layout, const DiffSpec& diff) {
  require_valid(layout);
  validate_diff(diff, layout);
  if (h.n_qubits() != layout.n_qubits()) {
    throw DimensionError("Hamiltonian and layout disagree on qubit count");
  }
  Weight total(0);
  for (const auto& term : h.terms()) {
    const Weight c(term.coefficient);
    total += c * c * string_variance<Weight>(term.string, layout, diff.block_id);
  }
  return total;
}

template <class Weight>
Weight theorem_bound(const Hamiltonian& h, const AnsatzLayout& layout, const DiffSpec& diff) {
  require_valid(layout);
  validate_diff(diff, layout);
  if (h.n_qubits() != layout.n_qubits()) {
    throw DimensionError("Hamiltonian and layout disagree on qubit count");
  }
  const Block& block = layout.block(diff.block_id);
  const int m = static_cast<int>(block.qubits.size());
  Weight sum(0);
  for (const auto& term : h.terms()) {
    const auto cone = causal_cone(term.string, layout);
    if (!cone.contains(diff.block_id)) continue;
    const Weight c(term.coefficient);
    sum += c * c * ratio<Weight>(1, pow_int(3, static_cast<int>(cone.qubit_count())));
  }
  const int depth = layout.layer_count() - block.layer;
  return ratio<Weight>(2 * pow_int(4, m), pow_int(4, m) - 1) *
         ratio<Weight>(pow_int(3, depth), pow_int(4, depth)) * sum;
}

PauliString first_qubit_z(const Block& block, std::size_t n_qubits) {
  return PauliString::single(n_qubits, block.qubits.front(), Pauli::Z);
}

std::vector<HeatmapEntry> variance_heatmap(const Hamiltonian& h, const AnsatzLayout& layout,
                                           HeatmapMode mode, const GeneratorChoice& generator) {
  require_valid(layout);
  std::vector<HeatmapEntry> out;
  out.reserve(layout.blocks().size());
  for (const auto& b : layout.blocks()) {
    const DiffSpec diff{b.id, generator(b, layout.n_qubits())};
    const double value = mode == HeatmapMode::Bound ? theorem_bound<double>(h, layout, diff)
                                                    : exact_variance<double>(h, layout, diff);
    out.push_back({b.id, b.layer, qubits_label(b), value});
  }
  return out;
}

#define PLATEAU_INSTANTIATE(W)                                                              \
  template class SupportDistribution<W>;                                                    \
  template SupportDistribution<W> lift<W>(const PauliString&);                              \
  template SupportDistribution<W> apply_mixer<W>(const SupportDistribution<W>&, QubitMask); \
  template SupportDistribution<W> apply_diff_block<W>(const SupportDistribution<W>&,        \
                                                      QubitMask);                           \
  template W measure_zero_state<W>(const SupportDistribution<W>&);                          \
  template W string_variance<W>(const PauliString&, const AnsatzLayout&, int);              \
  template W exact_variance<W>(const Hamiltonian&, const AnsatzLayout&, const DiffSpec&);   \
  template W theorem_bound<W>(const Hamiltonian&, const AnsatzLayout&, const DiffSpec&);

PLATEAU_INSTANTIATE(double)
PLATEAU_INSTANTIATE(Rational)

#undef PLATEAU_INSTANTIATE

}  // namespace plateau
