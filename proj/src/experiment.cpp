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

#include "plateau/experiment.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "plateau/design_engine.hpp"
#include "plateau/errors.hpp"
#include "plateau/tpe.hpp"

namespace plateau {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "kind",    "name",   "layout",     "hamiltonian", "h1",      "h2",
    "family",  "families", "samples",  "seed",        "convention", "threads",
    "output",  "rational", "debug_norms"};

std::string format(const char* fmt, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

const json& require(const json& j, const char* key, std::string_view kind) {
  if (!j.contains(key))
    throw ConfigError("kind '" + std::string(kind) + "' requires key '" + key + "'");
  return j.at(key);
}

Hamiltonian hamiltonian_from(const json& v, std::size_t n, const char* key) {
  std::string text;
  if (v.is_string()) {
    text = v.get<std::string>();
  } else if (v.is_array()) {
    for (const json& line : v) {
      if (!line.is_string()) throw ConfigError(std::string("'") + key + "' lines must be strings");
      text += line.get<std::string>() + "\n";
    }
  } else {
    throw ConfigError(std::string("'") + key + "' must be a string or an array of lines");
  }
  try {
    return Hamiltonian::parse(text, n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("'") + key + "': " + e.what());
  }
}

template <class T>
T number(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  return v.get<T>();
}

bool stochastic(ExperimentKind k) {
  return k == ExperimentKind::Mc || k == ExperimentKind::Tpe || k == ExperimentKind::Additivity ||
         k == ExperimentKind::OracleCheck;
}

std::string header(const ExperimentConfig& c, const std::string& extra = {}) {
  std::string line = "# plateau-scope kind=" + std::string(kind_name(c.kind)) +
                     format(" config_hash=%016" PRIx64, config_hash(c.source));
  line += c.seed ? format(" seed=%" PRIu64, *c.seed) : std::string(" seed=none");
  line += " convention=";
  line += c.convention ? convention_name(*c.convention) : std::string_view("none");
  if (!extra.empty()) line += " " + extra;
  return line + "\n";
}

std::filesystem::path write_file(const ExperimentConfig& c, const std::string& suffix,
                                 const std::string& body) {
  std::filesystem::create_directories(c.output_dir);
  const auto path = c.output_dir / (c.name + suffix + ".csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << body;
  return path;
}

// Scale from the exp(-i t F) convention of the design engine.
double convention_scale(const ExperimentConfig& c) {
  return c.convention == Convention::Half ? 0.25 : 1.0;
}

RunResult run_heatmap(const ExperimentConfig& c) {
  const AnsatzLayout& layout = *c.layout;
  const Hamiltonian& h = c.hamiltonians.front();
  const bool bound = c.kind == ExperimentKind::Bound;
  std::vector<HeatmapEntry> rows;
  if (c.rational) {
    for (const Block& b : layout.blocks()) {
      const DiffSpec diff{b.id, first_qubit_z(b, layout.n_qubits())};
      const Rational v = bound ? theorem_bound<Rational>(h, layout, diff)
                               : exact_variance<Rational>(h, layout, diff);
      rows.push_back({b.id, b.layer, qubits_label(b), v.convert_to<double>()});
    }
  } else {
    rows = variance_heatmap(h, layout, bound ? HeatmapMode::Bound : HeatmapMode::Exact);
  }
  std::string body = header(c, c.rational ? "arithmetic=rational" : "arithmetic=double");
  body += "block_id,layer,qubits,value\n";
  std::size_t nonzero = 0;
  for (const HeatmapEntry& e : rows) {
    const double v = e.value * convention_scale(c);
    if (v != 0.0) ++nonzero;
    body += format("%d,%d,", e.block_id, e.layer) + e.qubits + format(",%.12e\n", v);
  }
  RunResult r;
  r.files.push_back(write_file(c, "", body));
  r.summary.push_back(format("%zu blocks, %zu nonzero", rows.size(), nonzero));
  return r;
}

McOptions mc_options(const ExperimentConfig& c) {
  return {c.samples, *c.seed, *c.convention, c.threads};
}

std::string param_row(const DerivativeSlot& s) {
  return format("%zu,%d,%d,%d", s.index, s.block_id, s.layer, s.slot);
}

RunResult run_mc(const ExperimentConfig& c) {
  const AnsatzLayout& layout = *c.layout;
  const ScanResult scan = mc_scan(layout, *c.family, c.hamiltonians, mc_options(c));
  const auto& est = scan.estimates.front();

  std::string body = header(c, "family=" + std::string(family_name(*c.family)));
  body += "param_index,block_id,layer,slot,variance,std_error,samples,seed\n";
  for (std::size_t s = 0; s < scan.slots.size(); ++s)
    body += param_row(scan.slots[s]) +
            format(",%.12e,%.12e,%zu,%" PRIu64 "\n", est[s].variance, est[s].std_error,
                   est[s].sample_count, est[s].seed);

  std::string blocks = header(c, "family=" + std::string(family_name(*c.family)) +
                                     " block_average=arithmetic-mean-over-slots");
  blocks += "block_id,layer,qubits,value\n";
  for (const Block& b : layout.blocks()) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t s = 0; s < scan.slots.size(); ++s)
      if (scan.slots[s].block_id == b.id) {
        sum += est[s].variance;
        ++count;
      }
    const double mean = count ? sum / static_cast<double>(count) : 0.0;
    blocks += format("%d,%d,", b.id, b.layer) + qubits_label(b) + format(",%.12e\n", mean);
  }

  RunResult r;
  r.files.push_back(write_file(c, "", body));
  r.files.push_back(write_file(c, "_blocks", blocks));
  r.summary.push_back(format("%zu parameters, %zu samples", scan.slots.size(), c.samples));
  return r;
}

RunResult run_additivity(const ExperimentConfig& c) {
  const std::vector<Hamiltonian> hs = {c.hamiltonians[0], c.hamiltonians[1],
                                       c.hamiltonians[0] + c.hamiltonians[1]};
  const ScanResult scan = mc_scan(*c.layout, *c.family, hs, mc_options(c));
  std::string body = header(c, "family=" + std::string(family_name(*c.family)));
  body +=
      "param_index,block_id,layer,slot,var_h1,se_h1,var_h2,se_h2,var_sum,se_sum,difference,"
      "combined_se,z\n";
  std::size_t active = 0, within = 0;
  for (std::size_t s = 0; s < scan.slots.size(); ++s) {
    const VarianceEstimate& a = scan.estimates[0][s];
    const VarianceEstimate& b = scan.estimates[1][s];
    const VarianceEstimate& ab = scan.estimates[2][s];
    const double diff = ab.variance - a.variance - b.variance;
    const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error +
                                ab.std_error * ab.std_error);
    const double z = se > 0.0 ? diff / se : 0.0;
    if (std::max({a.variance, b.variance, ab.variance}) > 1e-20) {
      ++active;
      if (std::abs(diff) <= 2.0 * se) ++within;
    }
    body += param_row(scan.slots[s]) +
            format(",%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.6f\n", a.variance,
                   a.std_error, b.variance, b.std_error, ab.variance, ab.std_error, diff, se, z);
  }
  RunResult r;
  r.files.push_back(write_file(c, "", body));
  r.summary.push_back(format("%zu of %zu nontrivial parameters within 2 combined std errors",
                             within, active));
  return r;
}

RunResult run_oracle_check(const ExperimentConfig& c) {
  const AnsatzLayout& layout = *c.layout;
  const Hamiltonian& h = c.hamiltonians.front();
  const ScanResult scan = mc_scan(layout, GateFamily::Haar4, c.hamiltonians, mc_options(c));
  std::string body = header(c, "family=haar4");
  body += "block_id,layer,qubits,exact,mc,std_error,z\n";
  double max_z = 0.0;
  const auto& blocks = layout.blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Block& b = blocks[k];
    const double exact =
        exact_variance(h, layout, DiffSpec{b.id, first_qubit_z(b, layout.n_qubits())}) *
        convention_scale(c);
    const VarianceEstimate& e = scan.estimates[0][k];
    const double z = e.std_error > 0.0 ? (e.variance - exact) / e.std_error : 0.0;
    max_z = std::max(max_z, std::abs(z));
    body += format("%d,%d,", b.id, b.layer) + qubits_label(b) +
            format(",%.12e,%.12e,%.12e,%.6f\n", exact, e.variance, e.std_error, z);
  }
  RunResult r;
  r.files.push_back(write_file(c, "", body));
  r.summary.push_back(format("%zu blocks, max |z| = %.3f", blocks.size(), max_z));
  return r;
}

RunResult run_tpe(const ExperimentConfig& c) {
  const MomentOptions options{c.samples, *c.seed, 0, c.threads};
  const auto reports = tpe_benchmark(c.families, options, c.debug_norms);
  std::string body = header(c);
  body += c.debug_norms ? "family,samples,seed,lambda1,lambdainf,lambda2,trace_norm\n"
                        : "family,samples,seed,lambda1,lambdainf,lambda2\n";
  RunResult r;
  for (const TpeReport& t : reports) {
    body += t.family + format(",%zu,%" PRIu64 ",%.4f,%.4f,%.4f", t.sample_count, t.master_seed,
                              t.lambda1, t.lambdainf, t.lambda2);
    if (t.trace_norm) body += format(",%.4f", *t.trace_norm);
    body += "\n";
    r.summary.push_back(t.family + format(": %.4f %.4f %.4f", t.lambda1, t.lambdainf, t.lambda2) +
                        (t.ordered() ? "" : "  (lambda2 exceeds an induced norm)"));
  }
  r.files.insert(r.files.begin(), write_file(c, "", body));
  return r;
}

}  // namespace

std::string_view kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Bound: return "bound";
    case ExperimentKind::Exact: return "exact";
    case ExperimentKind::Mc: return "mc";
    case ExperimentKind::Tpe: return "tpe";
    case ExperimentKind::Additivity: return "additivity";
    case ExperimentKind::OracleCheck: return "oracle-check";
  }
  return "?";
}

ExperimentKind parse_kind(std::string_view name) {
  for (auto k : {ExperimentKind::Bound, ExperimentKind::Exact, ExperimentKind::Mc,
                 ExperimentKind::Tpe, ExperimentKind::Additivity, ExperimentKind::OracleCheck})
    if (kind_name(k) == name) return k;
  throw ConfigError("unknown experiment kind '" + std::string(name) + "'");
}

std::uint64_t config_hash(const json& j) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : j.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items())
    if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");

  ExperimentConfig c;
  c.source = j;
  try {
    if (!j.contains("kind") || !j.at("kind").is_string())
      throw ConfigError("config requires a string 'kind'");
    c.kind = parse_kind(j.at("kind").get<std::string>());
    const std::string_view kn = kind_name(c.kind);
    c.name = j.value("name", std::string(kn));
    if (c.name.empty() || c.name.find('/') != std::string::npos)
      throw ConfigError("'name' must be a plain file stem");
    if (j.contains("output")) c.output_dir = j.at("output").get<std::string>();
    if (j.contains("threads")) c.threads = std::max<std::size_t>(1, number<std::size_t>(j, "threads"));
    c.rational = j.value("rational", false);
    c.debug_norms = j.value("debug_norms", false);
    if (j.contains("convention")) c.convention = parse_convention(j.at("convention").get<std::string>());
    if (j.contains("seed")) c.seed = number<std::uint64_t>(j, "seed");
    if (j.contains("samples")) c.samples = number<std::size_t>(j, "samples");

    if (stochastic(c.kind) && !c.seed)
      throw ConfigError("kind '" + std::string(kn) + "' is stochastic and requires 'seed'");

    if (c.kind == ExperimentKind::Tpe) {
      if (!j.contains("samples")) c.samples = 100000;
      const json& fam = j.value("families", json("all"));
      if (fam.is_string() && fam.get<std::string>() == "all") {
        c.families = all_families();
      } else if (fam.is_array() && !fam.empty()) {
        for (const json& f : fam) c.families.push_back(parse_family(f.get<std::string>()));
      } else {
        throw ConfigError("'families' must be \"all\" or a non-empty list");
      }
      if (c.samples < 1000) throw ConfigError("tpe requires samples >= 1000");
      return c;
    }

    c.layout = layout_from_json(require(j, "layout", kn));
    require_valid(*c.layout);
    const std::size_t n = c.layout->n_qubits();

    if (c.kind == ExperimentKind::Additivity) {
      c.hamiltonians.push_back(hamiltonian_from(require(j, "h1", kn), n, "h1"));
      c.hamiltonians.push_back(hamiltonian_from(require(j, "h2", kn), n, "h2"));
    } else {
      c.hamiltonians.push_back(hamiltonian_from(require(j, "hamiltonian", kn), n, "hamiltonian"));
    }

    if (c.kind == ExperimentKind::Bound || c.kind == ExperimentKind::Exact) {
      if (!c.convention) c.convention = Convention::Full;
      return c;
    }

    require(j, "samples", kn);
    require(j, "convention", kn);
    if (c.samples < 2) throw ConfigError("'samples' must be at least 2");
    if (c.kind == ExperimentKind::OracleCheck) {
      if (j.contains("family") && j.at("family") != "haar4")
        throw ConfigError("oracle-check always uses the haar4 family");
      c.family = GateFamily::Haar4;
    } else {
      c.family = parse_family(require(j, "family", kn).get<std::string>());
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

RunResult run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::Bound:
    case ExperimentKind::Exact: return run_heatmap(config);
    case ExperimentKind::Mc: return run_mc(config);
    case ExperimentKind::Tpe: return run_tpe(config);
    case ExperimentKind::Additivity: return run_additivity(config);
    case ExperimentKind::OracleCheck: return run_oracle_check(config);
  }
  throw ConfigError("unhandled experiment kind");
}

}  // namespace plateau
