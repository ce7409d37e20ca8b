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
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "plateau/ansatz.hpp"
#include "plateau/design_engine.hpp"
#include "plateau/gates.hpp"
#include "plateau/pauli.hpp"

namespace plateau {

/**
 * Derivative convention. `Half` differentiates w.r.t. t in exp(-i t P / 2)
 * and uses (E(t + pi/2) - E(t - pi/2)) / 2. `Full` differentiates w.r.t. t
 * in exp(-i t F) and uses E(t + pi/4) - E(t - pi/4). Full derivatives are
 * twice the half ones, so variances differ by a factor of 4.
 */
enum class Convention { Half, Full };

std::string_view convention_name(Convention c);
Convention parse_convention(std::string_view name);

/// E(params) by gate-level simulation of build_circuit().
double energy(const AnsatzLayout& layout, GateFamily family, std::span<const double> params,
              const Hamiltonian& h);

/// Shift-rule derivative w.r.t. one flat parameter. Throws ConfigError for
/// number-conserving slots.
double param_shift_grad(const AnsatzLayout& layout, GateFamily family,
                        std::span<const double> params, const Hamiltonian& h,
                        std::size_t param_index, Convention convention);

struct VarianceEstimate {
  double mean = 0.0;
  /// Second moment <(dE)^2> over the samples.
  double variance = 0.0;
  /// Sample standard deviation of (dE)^2 divided by sqrt(samples).
  double std_error = 0.0;
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
};

/// A flat parameter of a parametric family.
struct ParamTarget {
  std::size_t param_index;
};

/// haar4 takes a DiffSpec (block and generator F); parametric families take a
/// ParamTarget.
using DiffTarget = std::variant<DiffSpec, ParamTarget>;

struct McOptions {
  std::size_t samples = 400;
  std::uint64_t master_seed = 0;
  Convention convention = Convention::Half;
  std::size_t workers = 1;
};

/// One differentiable quantity of a sampled circuit. For haar4 there is one
/// per block (slot 0, the inserted exp(-i t F)); otherwise one per
/// shiftable parameter.
struct DerivativeSlot {
  std::size_t index;  // flat parameter index, or block position for haar4
  int block_id;
  int layer;
  int slot;
};

struct ScanResult {
  std::vector<DerivativeSlot> slots;
  /// estimates[h][s] for Hamiltonian h and slot s.
  std::vector<std::vector<VarianceEstimate>> estimates;
  /// Largest |dE| seen over all samples, same indexing.
  std::vector<std::vector<double>> max_abs_derivative;
};

/**
 * Monte-Carlo gradient statistics. Every sample draws a fresh circuit from
 * its own stream make_stream(master_seed, sample_index): uniform angles for
 * parametric families; for haar4, every block is G_A exp(-i t F) G_B with
 * G_A, G_B Haar and t uniform. All Hamiltonians are evaluated on the same
 * samples. Results do not depend on `workers`.
 */
ScanResult mc_scan(const AnsatzLayout& layout, GateFamily family,
                   std::span<const Hamiltonian> hamiltonians, const McOptions& options,
                   const GeneratorChoice& generator = first_qubit_z);

VarianceEstimate mc_variance(const AnsatzLayout& layout, GateFamily family, const Hamiltonian& h,
                             const DiffTarget& target, const McOptions& options);

/// Angles drawn for one sample of a parametric family.
std::vector<double> sample_parameters(const AnsatzLayout& layout, GateFamily family,
                                      std::uint64_t master_seed, std::size_t sample_index);

/// Derivatives of one sample for every slot of mc_scan(), for one Hamiltonian.
std::vector<double> sample_derivatives(const AnsatzLayout& layout, GateFamily family,
                                       const Hamiltonian& h, std::uint64_t master_seed,
                                       std::size_t sample_index, Convention convention,
                                       const GeneratorChoice& generator = first_qubit_z);

}  // namespace plateau
