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

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "plateau/errors.hpp"
#include "plateau/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNonConvergence = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plateau-scope: gradient-variance experiments for block-structured ansatze"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::size_t> threads;
  bool debug_norms = false;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--samples", samples, "Override the sample count");
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--threads", threads, "Worker threads (results do not depend on this)");
  run->add_flag("--debug-norms", debug_norms, "tpe: also report the trace norm");

  auto* validate = app.add_subcommand("validate", "Parse and check a config without running it");
  validate->add_option("config", config_path, "Experiment JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json j = plateau::read_config_file(config_path);
    if (samples) j["samples"] = *samples;
    if (seed) j["seed"] = *seed;
    if (out_dir) j["output"] = *out_dir;
    if (threads) j["threads"] = *threads;
    if (debug_norms) j["debug_norms"] = true;
    const plateau::ExperimentConfig config = plateau::parse_config(j);

    if (validate->parsed()) {
      std::cout << config_path << ": ok (kind " << plateau::kind_name(config.kind) << ")\n";
      return 0;
    }
    const plateau::RunResult result = plateau::run_experiment(config);
    for (const auto& line : result.summary) std::cout << line << "\n";
    for (const auto& file : result.files) std::cout << "wrote " << file.string() << "\n";
    return 0;
  } catch (const plateau::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
