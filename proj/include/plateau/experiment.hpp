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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "plateau/ansatz.hpp"
#include "plateau/gates.hpp"
#include "plateau/gradient.hpp"
#include "plateau/pauli.hpp"

namespace plateau {

enum class ExperimentKind { Bound, Exact, Mc, Tpe, Additivity, OracleCheck };

std::string_view kind_name(ExperimentKind kind);
ExperimentKind parse_kind(std::string_view name);

/**
 * One experiment, parsed from JSON. Keys:
 *   kind         bound | exact | mc | tpe | additivity | oracle-check
 *   name         output file stem (default: kind)
 *   layout       explicit layout or {"checkerboard": {...}}
 *   hamiltonian  "<coef> <word>" lines, as one string or an array of lines
 *   h1, h2       additivity Hamiltonians
 *   family       gate family (mc, additivity; oracle-check is always haar4)
 *   families     "all" or a list of family names (tpe)
 *   samples, seed, convention ("half" | "full"), threads, output,
 *   rational     exact arithmetic for bound/exact
 *   debug_norms  tpe: add the trace-norm column
 */
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Bound;
  std::string name;
  std::optional<AnsatzLayout> layout;
  std::vector<Hamiltonian> hamiltonians;
  std::optional<GateFamily> family;
  std::vector<GateFamily> families;
  std::size_t samples = 0;
  std::optional<std::uint64_t> seed;
  std::optional<Convention> convention;
  std::size_t threads = 1;
  std::filesystem::path output_dir = ".";
  bool rational = false;
  bool debug_norms = false;
  /// The effective JSON, hashed into output headers.
  nlohmann::json source;
};

/// Throws ConfigError naming the offending key or invariant.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json read_config_file(const std::filesystem::path& path);

/// 64-bit FNV-1a of the compact JSON dump.
std::uint64_t config_hash(const nlohmann::json& j);

struct RunResult {
  std::vector<std::filesystem::path> files;
  /// Human-readable lines for the console.
  std::vector<std::string> summary;
};

RunResult run_experiment(const ExperimentConfig& config);

}  // namespace plateau
