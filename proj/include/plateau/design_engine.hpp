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
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "plateau/ansatz.hpp"
#include "plateau/pauli.hpp"

namespace plateau {

/// Exact arithmetic for small instances.
using Rational = boost::multiprecision::cpp_rational;

/**
 * Distribution of super-Pauli-string mass over support patterns.
 *
 * weight(S) is the total coefficient of the strings h (x) h whose
 * non-identity support is exactly S. Once a mixer has touched a qubit, its
 * letter is uniform over {X, Y, Z} independently of every other site, so the
 * support pattern is all that has to be tracked.
 */
template <class Weight = double>
class SupportDistribution {
 public:
  explicit SupportDistribution(std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  const std::map<QubitMask, Weight>& weights() const noexcept { return weights_; }
  bool empty() const noexcept { return weights_.empty(); }
  Weight at(QubitMask pattern) const;
  Weight total() const;

  /// Adds mass to a pattern. Negative or non-finite mass is rejected.
  void add(QubitMask pattern, const Weight& mass);

 private:
  std::size_t n_qubits_;
  std::map<QubitMask, Weight> weights_;
};

/// Derivative target: the block G_k = G_A exp(-i theta F) G_B and its
/// generator F, a nontrivial Pauli string supported inside the block.
struct DiffSpec {
  int block_id;
  PauliString generator;
};

void validate_diff(const DiffSpec& diff, const AnsatzLayout& layout);

/// Weights below this are dropped in floating-point propagation.
inline constexpr double kPruneThreshold = 1e-15;

template <class Weight = double>
SupportDistribution<Weight> lift(const PauliString& h);

template <class Weight>
SupportDistribution<Weight> apply_mixer(const SupportDistribution<Weight>& d, QubitMask y);

/// Mixer, commutator with a nontrivial Pauli generator, mixer, all on the same
/// qubit set. Patterns missing `y` vanish; the rest gain 2*4^m/(4^m - 1).
template <class Weight>
SupportDistribution<Weight> apply_diff_block(const SupportDistribution<Weight>& d,
                                             QubitMask y);

/// <00| . |00> of the distribution: each non-identity site is Z with
/// probability 1/3.
template <class Weight>
Weight measure_zero_state(const SupportDistribution<Weight>& d);

/// Var d_theta E for a single Pauli string; zero when the string's causal
/// cone misses the differentiated block.
template <class Weight = double>
Weight string_variance(const PauliString& h, const AnsatzLayout& layout, int block_id);

/// Sum_i c_i^2 times the single-string variance (distinct strings decouple).
template <class Weight = double>
Weight exact_variance(const Hamiltonian& h, const AnsatzLayout& layout, const DiffSpec& diff);

/// Closed-form lower bound
///   2*4^m/(4^m-1) * (3/4)^(l - l_c) * sum_i c_i^2 3^(-|cone(h_i)|)
/// over the strings whose cone contains the block.
template <class Weight = double>
Weight theorem_bound(const Hamiltonian& h, const AnsatzLayout& layout, const DiffSpec& diff);

enum class HeatmapMode { Bound, Exact };

struct HeatmapEntry {
  int block_id;
  int layer;
  std::string qubits;
  double value;
};

using GeneratorChoice = std::function<PauliString(const Block&, std::size_t n_qubits)>;

/// Z on the block's first listed qubit.
PauliString first_qubit_z(const Block& block, std::size_t n_qubits);

/// One value per block, in application order.
std::vector<HeatmapEntry> variance_heatmap(const Hamiltonian& h, const AnsatzLayout& layout,
                                           HeatmapMode mode,
                                           const GeneratorChoice& generator = first_qubit_z);

}  // namespace plateau
